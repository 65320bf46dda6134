#include "ogeg/optimize.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ogeg {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::vector<double> to_std(const VectorXd& v) { return {v.data(), v.data() + v.size()}; }

VectorXd to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

double inf_norm(const VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

bool all_finite(const VectorXd& v) { return v.allFinite(); }

}  // namespace

OptimResult bfgs_maximize(const Objective& objective, std::vector<double> x0,
                          const OptimOptions& options) {
    const auto dim = static_cast<Eigen::Index>(x0.size());
    OptimResult result;

    std::vector<double> grad_buf(x0.size());
    auto evaluate = [&](const VectorXd& x, VectorXd& g) {
        ++result.evaluations;
        const double v = objective(to_std(x), &grad_buf);
        g = to_eigen(grad_buf);
        return v;
    };

    VectorXd x = to_eigen(x0);
    VectorXd g(dim);
    double f = evaluate(x, g);
    if (!std::isfinite(f) || !all_finite(g)) {
        result.x = x0;
        result.value = f;
        result.message = "objective not finite at the starting point";
        return result;
    }

    MatrixXd inv_hess = MatrixXd::Identity(dim, dim);
    bool scaled = false;
    int stalled = 0;
    int resets = 0;

    for (int iter = 0; iter < options.max_iter; ++iter) {
        result.iterations = iter;
        if (inf_norm(g) < options.grad_tol) {
            result.converged = true;
            result.message = "gradient norm below tolerance";
            break;
        }

        VectorXd dir = inv_hess * g;
        if (dir.dot(g) <= 0.0) {
            inv_hess.setIdentity();
            dir = g;
        }
        // Keep the first trial step modest in log-parameter coordinates.
        const double dir_norm = inf_norm(dir);
        double step = dir_norm > 5.0 ? 5.0 / dir_norm : 1.0;

        const double slope = dir.dot(g);
        VectorXd x_new(dim);
        VectorXd g_new(dim);
        double f_new = -std::numeric_limits<double>::infinity();
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            x_new = x + step * dir;
            f_new = evaluate(x_new, g_new);
            if (std::isfinite(f_new) && all_finite(g_new) && f_new >= f + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            if (resets++ < 2) {
                inv_hess.setIdentity();
                scaled = false;
                continue;
            }
            result.message = "line search failed";
            break;
        }

        const VectorXd s = x_new - x;
        // Ascent on f is descent on -f: y is the change in the gradient of -f.
        const VectorXd y = g - g_new;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            if (!scaled) {
                inv_hess *= sy / y.dot(y);
                scaled = true;
            }
            const double rho = 1.0 / sy;
            const MatrixXd eye = MatrixXd::Identity(dim, dim);
            inv_hess = (eye - rho * s * y.transpose()) * inv_hess * (eye - rho * y * s.transpose()) +
                       rho * s * s.transpose();
        }

        const double change = std::abs(f_new - f) / std::max(1.0, std::abs(f));
        x = x_new;
        g = g_new;
        f = f_new;
        stalled = change < options.rel_change_tol ? stalled + 1 : 0;
        if (stalled >= options.stall_iters) {
            result.converged = true;
            result.message = "relative objective change below tolerance";
            break;
        }
        result.iterations = iter + 1;
    }
    if (!result.converged && result.message.empty()) {
        result.message = "iteration limit reached";
    }
    result.x = to_std(x);
    result.value = f;
    result.grad = to_std(g);
    return result;
}

OptimResult nelder_mead_maximize(const Objective& objective, std::vector<double> x0,
                                 const OptimOptions& options) {
    const std::size_t dim = x0.size();
    OptimResult result;
    auto value_of = [&](const std::vector<double>& x) {
        ++result.evaluations;
        const double v = objective(x, nullptr);
        // Minimize the negated objective; infeasible points rank last.
        return std::isfinite(v) ? -v : std::numeric_limits<double>::infinity();
    };

    std::vector<std::vector<double>> simplex(dim + 1, x0);
    for (std::size_t i = 0; i < dim; ++i) {
        const double delta = x0[i] == 0.0 ? options.initial_simplex
                                          : options.initial_simplex * std::max(1.0, std::abs(x0[i]));
        simplex[i + 1][i] += delta;
    }
    std::vector<double> values(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) values[i] = value_of(simplex[i]);

    std::vector<std::size_t> order(dim + 1);
    const int max_evals = options.max_iter * static_cast<int>(20 * (dim + 1));
    int iter = 0;
    for (; result.evaluations < max_evals; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[dim - 1];

        double spread_x = 0.0;
        for (std::size_t i = 0; i <= dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                spread_x = std::max(spread_x, std::abs(simplex[i][j] - simplex[best][j]));
            }
        }
        const double spread_f = std::abs(values[worst] - values[best]);
        if (std::isfinite(values[worst]) &&
            spread_f <= options.rel_change_tol * std::max(1.0, std::abs(values[best])) &&
            spread_x <= 1e-8) {
            result.converged = true;
            result.message = "simplex collapsed";
            break;
        }

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j] / dim;
        }
        auto along = [&](double t) {
            std::vector<double> p(dim);
            for (std::size_t j = 0; j < dim; ++j) {
                p[j] = centroid[j] + t * (simplex[worst][j] - centroid[j]);
            }
            return p;
        };

        auto reflected = along(-1.0);
        const double fr = value_of(reflected);
        if (fr < values[best]) {
            auto expanded = along(-2.0);
            const double fe = value_of(expanded);
            if (fe < fr) {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[second]) {
            simplex[worst] = reflected;
            values[worst] = fr;
            continue;
        }
        const bool outside = fr < values[worst];
        auto contracted = along(outside ? -0.5 : 0.5);
        const double fc = value_of(contracted);
        if (fc < (outside ? fr : values[worst])) {
            simplex[worst] = contracted;
            values[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < dim; ++j) {
                simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
            }
            values[i] = value_of(simplex[i]);
        }
    }
    const auto best_it = std::min_element(values.begin(), values.end());
    const auto best = static_cast<std::size_t>(best_it - values.begin());
    result.x = simplex[best];
    result.value = -values[best];
    result.iterations = iter;
    if (!result.converged) result.message = "evaluation limit reached";
    return result;
}

}  // namespace ogeg
