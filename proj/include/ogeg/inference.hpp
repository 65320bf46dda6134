#pragma once

#include "ogeg/dataset.hpp"
#include "ogeg/distributions.hpp"
#include "ogeg/optimize.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ogeg {

/// Sum of log densities. -inf when some observation has zero density.
double log_likelihood(const ModelSpec& model, const Dataset& data);

/// Analytic score (dL/dalpha, dL/dlambda, dL/dc, dL/dbeta) of the OGE-G
/// log-likelihood. Throws NumericalError naming the observation if a term is
/// not finite.
std::array<double, 4> score(const OgegParams& params, const Dataset& data);

/// Closed-form maximizer of the likelihood in beta with (alpha, lambda, c)
/// held fixed: beta = -n / sum log(1 - e^{-z_i}).
double beta_profile_mle(double alpha, double lambda, double c, const Dataset& data);

/// Negative Hessian of the OGE-G log-likelihood, assembled from analytic
/// second derivatives. Order (alpha, lambda, c, beta).
Eigen::Matrix4d observed_information(const OgegParams& params, const Dataset& data);

/// Observed information for any family: analytic for OGE-G, a central
/// finite-difference Hessian of the log-likelihood otherwise.
Eigen::MatrixXd observed_information(const ModelSpec& model, const Dataset& data);

enum class ParamSpace { Log, Natural };

struct FitConfig {
    OptimOptions optim{};
    ParamSpace space = ParamSpace::Log;
    /// OGE-G only: eliminate beta through its closed-form profile maximizer.
    bool profile_beta = true;
    /// Replaces the deterministic start grid when set (natural units, family order).
    std::optional<std::vector<double>> start;
    /// Polish the best OGE-G optimum with Newton steps on the analytic Hessian
    /// (taken in log coordinates whatever `space` is).
    bool newton_polish = true;
    double ci_level = 0.95;
};

struct Interval {
    double lo;
    double hi;
    /// Wald lower end before clamping at 0.
    double lo_unclamped;
};

struct StartDiagnostic {
    std::vector<double> start;
    double loglik;
    bool converged;
    int iterations;
    std::string method;
    std::string message;
};

struct FitResult {
    ModelSpec model;
    double loglik = 0.0;
    std::vector<double> score_at_mle{};
    Eigen::MatrixXd covariance{};
    std::vector<Interval> conf_intervals{};
    double ci_level = 0.95;
    bool converged = false;
    int iterations = 0;
    /// Number of starts the reported optimum was selected from.
    int multistart_best_of = 0;
    /// Largest |theta_i * dL/dtheta_i| at the optimum (log-space gradient).
    double log_grad_norm = 0.0;
    std::string method{};
    std::vector<StartDiagnostic> starts{};
};

/// Maximum-likelihood fit. Multi-start quasi-Newton in log-parameter space
/// with a Nelder-Mead fallback. Throws DataError when the sample has fewer
/// points than parameters and ConvergenceError when every start fails.
FitResult fit_mle(Family family, const Dataset& data, const FitConfig& config = {});

/// Wald intervals at level 1 - gamma, lower ends clamped at 0. Throws
/// NumericalError when a variance is negative or not finite.
std::vector<Interval> confidence_intervals(const FitResult& fit, double gamma);

struct ProfileCurve {
    std::string parameter;
    std::vector<double> grid;
    /// NaN where the inner maximization failed.
    std::vector<double> profile_loglik;
    int gaps = 0;
};

/// For each grid value, holds `parameter` fixed and maximizes the
/// log-likelihood over the remaining parameters, warm-started from `full`.
ProfileCurve profile_curve(Family family, const Dataset& data, const std::string& parameter,
                           const std::vector<double>& grid, const FitResult& full,
                           const FitConfig& config = {});

}  // namespace ogeg
