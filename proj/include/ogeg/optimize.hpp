#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ogeg {

/// Objective to be maximized. Returns the value and fills `grad` when it is
/// non-null. Non-finite values are treated as infeasible points.
using Objective = std::function<double(const std::vector<double>& x, std::vector<double>* grad)>;

struct OptimOptions {
    double grad_tol = 1e-6;        // infinity norm of the gradient
    double rel_change_tol = 1e-10; // relative objective change ...
    int stall_iters = 5;           // ... sustained over this many iterations
    int max_iter = 500;
    double initial_simplex = 0.1;  // Nelder-Mead only
};

struct OptimResult {
    std::vector<double> x;
    double value = 0.0;
    std::vector<double> grad;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
    std::string message;
};

/// Quasi-Newton (BFGS) ascent with a backtracking Armijo line search. Each
/// accepted step does not decrease the objective.
OptimResult bfgs_maximize(const Objective& objective, std::vector<double> x0,
                          const OptimOptions& options = {});

/// Derivative-free Nelder-Mead ascent. Converged when the simplex values and
/// vertices collapse below the relative tolerances.
OptimResult nelder_mead_maximize(const Objective& objective, std::vector<double> x0,
                                 const OptimOptions& options = {});

}  // namespace ogeg
