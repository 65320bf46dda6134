#include "ogeg/inference.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

namespace ogeg {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// t e^t - (e^t - 1) = sum_{k>=2} (k-1) t^k / k!
double tangent_gap(double t) {
    if (std::abs(t) < 0.5) {
        double term = t;  // t^k / k! at k = 1
        double sum = 0.0;
        for (int k = 2; k < 40; ++k) {
            term *= t / k;
            sum += (k - 1) * term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return t * std::exp(t) - std::expm1(t);
}

// 2(e^t - 1) - 2 t e^t + t^2 e^t = sum_{k>=3} (k-1)(k-2) t^k / k!
double curvature_gap(double t) {
    if (std::abs(t) < 0.5) {
        double term = t * t / 2.0;  // t^k / k! at k = 2
        double sum = 0.0;
        for (int k = 3; k < 40; ++k) {
            term *= t / k;
            sum += (k - 1) * (k - 2) * term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    const double e = std::exp(t);
    return 2.0 * std::expm1(t) - 2.0 * t * e + t * t * e;
}

// Per-observation pieces of the OGE-G log-likelihood and its derivatives.
//   H = (lambda/c)(e^{cx}-1), w = e^H, z = alpha (w - 1).
// Products of the large factor w with 1/(e^z - 1) are formed in log space.
struct ObsTerms {
    double H;
    double w;
    double wm1;     // e^H - 1
    double z;
    double dH_dl;   // (e^{cx}-1)/c
    double dH_dc;   // tau
    double d2H_dlc; // tau / lambda
    double d2H_dcc;
    double log1mexp_z;
    double r_wm1;   // (e^H - 1)/(e^z - 1)
    double r_w;     // e^H/(e^z - 1)
    double s_ww;    // e^z e^{2H}/(e^z - 1)^2
    double s_wwm1;  // e^z e^H (e^H - 1)/(e^z - 1)^2
    double s_wm1wm1;
};

ObsTerms obs_terms(const OgegParams& p, double x) {
    ObsTerms o{};
    const double t = p.c * x;
    o.H = gompertz_cum_hazard(x, p.lambda, p.c);
    o.w = std::exp(o.H);
    o.wm1 = std::expm1(o.H);
    const double log_wm1 = log_expm1(o.H);
    o.z = o.H > 700.0 ? std::exp(std::log(p.alpha) + log_wm1) : p.alpha * o.wm1;
    o.dH_dl = std::expm1(t) / p.c;
    o.dH_dc = p.lambda / (p.c * p.c) * tangent_gap(t);
    o.d2H_dlc = o.dH_dc / p.lambda;
    o.d2H_dcc = p.lambda / (p.c * p.c * p.c) * curvature_gap(t);
    o.log1mexp_z = log1mexp(o.z);
    const double lz = log_expm1(o.z);
    o.r_wm1 = std::exp(log_wm1 - lz);
    o.r_w = std::exp(o.H - lz);
    o.s_ww = std::exp(o.z + 2.0 * o.H - 2.0 * lz);
    o.s_wwm1 = std::exp(o.z + o.H + log_wm1 - 2.0 * lz);
    o.s_wm1wm1 = std::exp(o.z + 2.0 * log_wm1 - 2.0 * lz);
    return o;
}

double ogeg_loglik(const OgegParams& p, const Dataset& data) {
    const double n = static_cast<double>(data.size());
    double sum = n * (std::log(p.alpha) + std::log(p.beta) + std::log(p.lambda));
    for (double x : data.values()) {
        const double H = gompertz_cum_hazard(x, p.lambda, p.c);
        const double z = H > 700.0 ? std::exp(std::log(p.alpha) + log_expm1(H)) : p.alpha * std::expm1(H);
        if (!std::isfinite(z)) return kNegInf;
        sum += p.c * x + H - z + (p.beta - 1.0) * log1mexp(z);
    }
    return std::isnan(sum) ? kNegInf : sum;
}

std::string obs_label(std::size_t i, double x) {
    std::ostringstream os;
    os << "observation " << i << " (x = " << x << ")";
    return os.str();
}

// Natural-parameter gradient of the log-likelihood for the closed-form
// families. Returns false when no analytic form is implemented.
bool analytic_gradient(Family family, std::span<const double> th, const Dataset& data,
                       std::vector<double>& g) {
    const double n = static_cast<double>(data.size());
    g.assign(th.size(), 0.0);
    switch (family) {
        case Family::E: {
            g[0] = n / th[0];
            for (double x : data.values()) g[0] -= x;
            return true;
        }
        case Family::GE: {
            const double a = th[0], b = th[1];
            g[0] = n / a;
            g[1] = n / b;
            for (double x : data.values()) {
                const double z = a * x;
                g[0] += -x + (b - 1.0) * x / std::expm1(z);
                g[1] += log1mexp(z);
            }
            return true;
        }
        case Family::G: {
            const double l = th[0], c = th[1];
            g[0] = n / l;
            for (double x : data.values()) {
                const double t = c * x;
                g[0] -= std::expm1(t) / c;
                g[1] += x - l / (c * c) * tangent_gap(t);
            }
            return true;
        }
        case Family::GG: {
            const double l = th[0], c = th[1], b = th[2];
            g[0] = n / l;
            g[2] = n / b;
            for (double x : data.values()) {
                const double t = c * x;
                const double H = gompertz_cum_hazard(x, l, c);
                const double dl = std::expm1(t) / c;
                const double dc = l / (c * c) * tangent_gap(t);
                const double r = 1.0 / std::expm1(H);
                g[0] += -dl + (b - 1.0) * r * dl;
                g[1] += x - dc + (b - 1.0) * r * dc;
                g[2] += log1mexp(H);
            }
            return true;
        }
        case Family::OGEG: {
            const auto s = score(OgegParams::from(th), data);
            g.assign(s.begin(), s.end());
            return true;
        }
        case Family::BG: return false;
    }
    return false;
}

std::vector<double> natural_gradient(Family family, std::span<const double> th, const Dataset& data) {
    std::vector<double> g;
    if (analytic_gradient(family, th, data, g)) return g;
    auto ll = [&](std::span<const double> v) {
        for (double p : v) {
            if (!(p > 0.0)) return kNegInf;
        }
        return log_likelihood(ModelSpec(family, {v.begin(), v.end()}), data);
    };
    return finite_diff_gradient(ll, th, 1e-6);
}

// Optimization problem over a subset of a family's parameters. Parameters not
// listed in `free` keep their value from `base`; for OGE-G with
// `profile_beta`, beta is recomputed from the closed-form profile maximizer.
struct Problem {
    Family family;
    const Dataset* data;
    std::vector<std::size_t> free;
    std::vector<double> base;
    bool profile_beta = false;
    ParamSpace space = ParamSpace::Log;

    std::vector<double> to_coords(std::span<const double> natural) const {
        std::vector<double> u;
        for (std::size_t idx : free) {
            u.push_back(space == ParamSpace::Log ? std::log(natural[idx]) : natural[idx]);
        }
        return u;
    }

    // Full natural parameter vector for optimizer coordinates; empty if infeasible.
    std::vector<double> expand(const std::vector<double>& u) const {
        std::vector<double> th = base;
        for (std::size_t k = 0; k < free.size(); ++k) {
            const double v = space == ParamSpace::Log ? std::exp(u[k]) : u[k];
            if (!(v > 0.0) || !std::isfinite(v)) return {};
            th[free[k]] = v;
        }
        if (profile_beta) {
            try {
                th[3] = beta_profile_mle(th[0], th[1], th[2], *data);
            } catch (const Error&) {
                return {};
            }
            if (!(th[3] > 0.0) || !std::isfinite(th[3])) return {};
        }
        return th;
    }

    double operator()(const std::vector<double>& u, std::vector<double>* grad) const {
        const std::vector<double> th = expand(u);
        if (th.empty()) {
            if (grad) grad->assign(u.size(), kNaN);
            return kNegInf;
        }
        const double ll = log_likelihood(ModelSpec(family, th), *data);
        if (grad) {
            grad->assign(u.size(), kNaN);
            if (std::isfinite(ll)) {
                try {
                    // With beta at its profile maximizer, dL/dbeta = 0 and the
                    // remaining partials are the profile gradient.
                    const auto g = natural_gradient(family, th, *data);
                    for (std::size_t k = 0; k < free.size(); ++k) {
                        const double chain = space == ParamSpace::Log ? th[free[k]] : 1.0;
                        (*grad)[k] = g[free[k]] * chain;
                    }
                } catch (const Error&) {
                    // leave NaN: the line search treats the point as infeasible
                }
            }
        }
        return ll;
    }
};

struct Attempt {
    std::vector<double> theta;
    double loglik = kNegInf;
    bool converged = false;
    int iterations = 0;
    std::string method;
    std::string message;
};

Attempt run_start(const Problem& problem, const std::vector<double>& start_natural,
                  const OptimOptions& options) {
    Attempt out;
    const Objective objective = [&problem](const std::vector<double>& u, std::vector<double>* g) {
        return problem(u, g);
    };
    const std::vector<double> u0 = problem.to_coords(start_natural);
    OptimResult res = bfgs_maximize(objective, u0, options);
    out.method = "bfgs";
    if (!res.converged || !std::isfinite(res.value)) {
        OptimOptions nm_opts = options;
        nm_opts.max_iter = std::max(options.max_iter, 2000);
        const OptimResult simplex = nelder_mead_maximize(
            objective, std::isfinite(res.value) ? res.x : u0, nm_opts);
        const OptimResult again = bfgs_maximize(objective, simplex.x, options);
        if (again.converged && std::isfinite(again.value)) {
            res = again;
            out.method = "nelder-mead+bfgs";
        } else {
            res = simplex.value >= again.value || !std::isfinite(again.value) ? simplex : again;
            out.method = "nelder-mead";
        }
    }
    out.theta = problem.expand(res.x);
    out.loglik = res.value;
    out.converged = res.converged && std::isfinite(res.value) && !out.theta.empty();
    out.iterations = res.iterations;
    out.message = res.message;
    return out;
}

std::vector<std::vector<double>> start_grid(Family family, const Dataset& data) {
    const double inv_max = 1.0 / data.max();
    const double inv_mean = 1.0 / data.mean();
    std::vector<std::vector<double>> starts;
    switch (family) {
        case Family::E:
            for (double a : {0.5, 1.0, 2.0}) starts.push_back({a * inv_mean});
            break;
        case Family::GE:
            for (double a : {0.5, 1.0, 2.0})
                for (double b : {0.5, 1.0, 2.0}) starts.push_back({a * inv_mean, b});
            break;
        case Family::G:
            for (double l : {0.1, 1.0})
                for (double c : {0.1, 1.0, 10.0}) starts.push_back({l * inv_mean, c * inv_max});
            break;
        case Family::GG:
            for (double l : {0.01, 0.1, 1.0})
                for (double c : {0.1, 1.0, 10.0})
                    for (double b : {0.5, 1.0}) starts.push_back({l * inv_mean, c * inv_max, b});
            break;
        case Family::BG:
            for (double a : {0.5, 1.0})
                for (double b : {0.5, 1.0})
                    for (double l : {0.01, 0.1})
                        for (double c : {1.0, 10.0})
                            starts.push_back({a, b, l * inv_mean, c * inv_max});
            break;
        case Family::OGEG:
            // alpha is dimensionless; lambda and c carry 1/time units.
            for (double a : {0.01, 0.1, 1.0})
                for (double l : {1e-4, 1e-2, 1.0})
                    for (double c : {0.01, 0.1, 1.0})
                        starts.push_back({a, l * inv_max, c * inv_max, 1.0});
            break;
    }
    return starts;
}

// Newton iterations on the full OGE-G log-likelihood in log-parameter
// coordinates, run while the Hessian is negative definite. Near the optimum
// the gain of a step falls below the rounding noise of the log-likelihood, so
// a step is also accepted when the log-likelihood is unchanged to within that
// noise and the gradient norm strictly drops.
std::vector<double> newton_polish(std::vector<double> theta, const Dataset& data) {
    using Eigen::Matrix4d;
    using Eigen::Vector4d;
    auto log_gradient = [&data](const std::vector<double>& th) -> std::optional<Vector4d> {
        try {
            const auto s = score(OgegParams::from(th), data);
            return Vector4d(th[0] * s[0], th[1] * s[1], th[2] * s[2], th[3] * s[3]);
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    double ll = ogeg_loglik(OgegParams::from(theta), data);
    const double noise = 1e-12 * std::max(1.0, std::abs(ll));
    auto g = log_gradient(theta);
    for (int iter = 0; iter < 30 && g; ++iter) {
        const double gnorm = g->cwiseAbs().maxCoeff();
        if (gnorm < 1e-11) break;
        Matrix4d info;
        try {
            info = observed_information(OgegParams::from(theta), data);
        } catch (const Error&) {
            break;
        }
        const Vector4d th(theta[0], theta[1], theta[2], theta[3]);
        // Hessian in v = log(theta): D(-I)D + diag(theta * score).
        Matrix4d neg_hess = th.asDiagonal() * info * th.asDiagonal();
        neg_hess.diagonal() -= *g;
        Eigen::LLT<Matrix4d> llt(neg_hess);
        if (llt.info() != Eigen::Success) break;
        const Vector4d step = llt.solve(*g);
        bool improved = false;
        for (double scale = 1.0; scale > 1e-6; scale *= 0.5) {
            std::vector<double> cand(4);
            for (int k = 0; k < 4; ++k) cand[k] = theta[k] * std::exp(scale * step[k]);
            const double ll_new = ogeg_loglik(OgegParams::from(cand), data);
            if (!std::isfinite(ll_new) || ll_new < ll - noise) continue;
            const auto g_new = log_gradient(cand);
            if (!g_new) continue;
            if (ll_new > ll + noise || g_new->cwiseAbs().maxCoeff() < gnorm) {
                theta = cand;
                ll = std::max(ll, ll_new);
                g = g_new;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    return theta;
}

Eigen::MatrixXd invert_information(const Eigen::MatrixXd& info) {
    const auto k = info.rows();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(info);
    if (!info.allFinite() || !lu.isInvertible()) {
        return Eigen::MatrixXd::Constant(k, k, kNaN);
    }
    Eigen::MatrixXd cov = lu.inverse();
    return 0.5 * (cov + cov.transpose());
}

}  // namespace

double log_likelihood(const ModelSpec& model, const Dataset& data) {
    if (model.family() == Family::OGEG) return ogeg_loglik(model.ogeg_params(), data);
    double sum = 0.0;
    for (double x : data.values()) {
        const double lp = log_pdf(model, x);
        if (lp == kNegInf || std::isnan(lp)) return kNegInf;
        sum += lp;
    }
    return sum;
}

std::array<double, 4> score(const OgegParams& p, const Dataset& data) {
    p.validate();
    const double n = static_cast<double>(data.size());
    std::array<double, 4> s = {n / p.alpha, n / p.lambda, 0.0, n / p.beta};
    const double bm1 = p.beta - 1.0;
    const auto xs = data.values();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        const ObsTerms o = obs_terms(p, x);
        const double da = -o.wm1 + bm1 * o.r_wm1;
        const double dl = o.dH_dl - p.alpha * o.w * o.dH_dl + bm1 * p.alpha * o.r_w * o.dH_dl;
        const double dc = x + o.dH_dc - p.alpha * o.w * o.dH_dc + bm1 * p.alpha * o.r_w * o.dH_dc;
        const double db = o.log1mexp_z;
        if (!std::isfinite(da) || !std::isfinite(dl) || !std::isfinite(dc) || !std::isfinite(db)) {
            throw NumericalError("score: non-finite term at " + obs_label(i, x));
        }
        s[0] += da;
        s[1] += dl;
        s[2] += dc;
        s[3] += db;
    }
    return s;
}

double beta_profile_mle(double alpha, double lambda, double c, const Dataset& data) {
    const OgegParams p{alpha, lambda, c, 1.0};
    p.validate();
    double sum = 0.0;
    for (double x : data.values()) {
        const double H = gompertz_cum_hazard(x, lambda, c);
        const double z = H > 700.0 ? std::exp(std::log(alpha) + log_expm1(H)) : alpha * std::expm1(H);
        sum += log1mexp(z);
    }
    if (!(sum < 0.0)) {
        throw NumericalError("beta_profile_mle: sum of log(1 - e^{-z}) is not negative (all inner cdfs round to 1)");
    }
    return -static_cast<double>(data.size()) / sum;
}

Eigen::Matrix4d observed_information(const OgegParams& p, const Dataset& data) {
    p.validate();
    const double n = static_cast<double>(data.size());
    const double a = p.alpha;
    const double bm1 = p.beta - 1.0;
    // Hessian of the log-likelihood; index order (alpha, lambda, c, beta).
    Eigen::Matrix4d hess = Eigen::Matrix4d::Zero();
    hess(0, 0) = -n / (a * a);
    hess(1, 1) = -n / (p.lambda * p.lambda);
    hess(3, 3) = -n / (p.beta * p.beta);
    const auto xs = data.values();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const ObsTerms o = obs_terms(p, xs[i]);
        const double hl = o.dH_dl;
        const double hc = o.dH_dc;
        Eigen::Matrix4d h;
        h(0, 0) = -bm1 * o.s_wm1wm1;
        h(0, 1) = -o.w * hl + bm1 * (-o.s_wwm1 * a * hl + o.r_w * hl);
        h(0, 2) = -o.w * hc + bm1 * (-o.s_wwm1 * a * hc + o.r_w * hc);
        h(1, 1) = -a * o.w * hl * hl + bm1 * (-o.s_ww * a * a * hl * hl + o.r_w * a * hl * hl);
        h(1, 2) = o.d2H_dlc - a * o.w * (hl * hc + o.d2H_dlc) +
                  bm1 * (-o.s_ww * a * a * hl * hc + o.r_w * a * (hl * hc + o.d2H_dlc));
        h(2, 2) = o.d2H_dcc - a * o.w * (hc * hc + o.d2H_dcc) +
                  bm1 * (-o.s_ww * a * a * hc * hc + o.r_w * a * (hc * hc + o.d2H_dcc));
        h(0, 3) = o.r_wm1;
        h(1, 3) = o.r_w * a * hl;
        h(2, 3) = o.r_w * a * hc;
        h(3, 3) = 0.0;
        for (int r = 0; r < 4; ++r) {
            for (int c = r; c < 4; ++c) {
                if (!std::isfinite(h(r, c))) {
                    throw NumericalError("observed_information: non-finite entry (" + std::to_string(r) +
                                         ", " + std::to_string(c) + ") at " + obs_label(i, xs[i]));
                }
                hess(r, c) += h(r, c);
            }
        }
    }
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < r; ++c) hess(r, c) = hess(c, r);
    }
    return -hess;
}

Eigen::MatrixXd observed_information(const ModelSpec& model, const Dataset& data) {
    if (model.family() == Family::OGEG) {
        return observed_information(model.ogeg_params(), data);
    }
    const Family family = model.family();
    auto ll = [&](std::span<const double> v) {
        for (double p : v) {
            if (!(p > 0.0)) return kNegInf;
        }
        return log_likelihood(ModelSpec(family, {v.begin(), v.end()}), data);
    };
    const auto params = model.params();
    const auto k = static_cast<Eigen::Index>(params.size());
    const std::vector<double> h = finite_diff_hessian(ll, params, 1e-4);
    Eigen::MatrixXd info(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
        for (Eigen::Index c = 0; c < k; ++c) info(r, c) = -h[static_cast<std::size_t>(r * k + c)];
    }
    return info;
}

FitResult fit_mle(Family family, const Dataset& data, const FitConfig& config) {
    const std::size_t k = param_count(family);
    if (data.size() < k) {
        throw DataError("fit_mle: " + std::string(family_label(family)) + " has " + std::to_string(k) +
                        " parameters but the dataset has only " + std::to_string(data.size()) +
                        " observations");
    }

    Problem problem;
    problem.family = family;
    problem.data = &data;
    problem.space = config.space;
    problem.profile_beta = family == Family::OGEG && config.profile_beta;
    for (std::size_t i = 0; i < k; ++i) {
        if (!(problem.profile_beta && i == 3)) problem.free.push_back(i);
    }

    std::vector<std::vector<double>> starts;
    if (config.start) {
        if (config.start->size() != k) {
            throw DomainError("fit_mle: start vector has " + std::to_string(config.start->size()) +
                              " entries, family needs " + std::to_string(k));
        }
        starts.push_back(*config.start);
    } else {
        starts = start_grid(family, data);
    }

    std::vector<StartDiagnostic> diagnostics;
    std::optional<Attempt> best;
    int converged_count = 0;
    for (const auto& start : starts) {
        problem.base = start;
        Attempt attempt;
        try {
            (void)ModelSpec(family, start);  // validates
            attempt = run_start(problem, start, config.optim);
        } catch (const Error& e) {
            attempt.message = e.what();
        }
        diagnostics.push_back({start, attempt.loglik, attempt.converged, attempt.iterations,
                               attempt.method, attempt.message});
        if (!attempt.converged) continue;
        ++converged_count;
        if (!best || attempt.loglik > best->loglik) best = attempt;
    }
    if (!best) {
        std::ostringstream os;
        os << "fit_mle: all " << starts.size() << " starts failed for " << family_label(family);
        for (const auto& d : diagnostics) os << "\n  start -> " << d.method << ": " << d.message;
        throw ConvergenceError(os.str(), kNaN);
    }

    std::vector<double> theta = best->theta;
    std::string method = best->method;
    if (family == Family::OGEG && config.newton_polish) {
        theta = newton_polish(theta, data);
        method += "+newton";
    }

    FitResult fit{ModelSpec(family, theta)};
    fit.loglik = log_likelihood(fit.model, data);
    fit.score_at_mle = natural_gradient(family, theta, data);
    fit.log_grad_norm = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        fit.log_grad_norm = std::max(fit.log_grad_norm, std::abs(theta[i] * fit.score_at_mle[i]));
    }
    fit.converged = true;
    fit.iterations = best->iterations;
    fit.multistart_best_of = converged_count;
    fit.method = method;
    fit.starts = std::move(diagnostics);
    fit.ci_level = config.ci_level;
    try {
        fit.covariance = invert_information(observed_information(fit.model, data));
    } catch (const Error&) {
        fit.covariance = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(k),
                                                   static_cast<Eigen::Index>(k), kNaN);
    }
    try {
        fit.conf_intervals = confidence_intervals(fit, 1.0 - config.ci_level);
    } catch (const Error&) {
        fit.conf_intervals.clear();
    }
    return fit;
}

std::vector<Interval> confidence_intervals(const FitResult& fit, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw DomainError("confidence_intervals: gamma must lie in (0, 1)");
    }
    const auto params = fit.model.params();
    if (fit.covariance.rows() != static_cast<Eigen::Index>(params.size())) {
        throw NumericalError("confidence_intervals: covariance has the wrong shape");
    }
    const boost::math::normal standard;
    const double z = boost::math::quantile(boost::math::complement(standard, gamma / 2.0));
    std::vector<Interval> out;
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double var = fit.covariance(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
        if (!std::isfinite(var) || var < 0.0) {
            throw NumericalError("confidence_intervals: variance of " +
                                 std::string(param_names(fit.model.family())[i]) +
                                 " is negative or undefined (covariance not PSD)");
        }
        const double half = z * std::sqrt(var);
        const double lo = params[i] - half;
        out.push_back({std::max(0.0, lo), params[i] + half, lo});
    }
    return out;
}

ProfileCurve profile_curve(Family family, const Dataset& data, const std::string& parameter,
                           const std::vector<double>& grid, const FitResult& full,
                           const FitConfig& config) {
    const auto names = param_names(family);
    const auto it = std::find(names.begin(), names.end(), parameter);
    if (it == names.end()) {
        throw DomainError("profile_curve: " + std::string(family_label(family)) +
                          " has no parameter '" + parameter + "'");
    }
    if (full.model.family() != family) {
        throw DomainError("profile_curve: full fit belongs to another family");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw DomainError("profile_curve: grid must be strictly increasing");
    }
    const auto fixed = static_cast<std::size_t>(it - names.begin());
    const std::size_t k = names.size();

    Problem problem;
    problem.family = family;
    problem.data = &data;
    problem.space = ParamSpace::Log;
    problem.profile_beta = family == Family::OGEG && config.profile_beta && fixed != 3;
    for (std::size_t i = 0; i < k; ++i) {
        if (i == fixed || (problem.profile_beta && i == 3)) continue;
        problem.free.push_back(i);
    }

    ProfileCurve curve{parameter, grid, std::vector<double>(grid.size(), kNaN), 0};
    const auto mle = full.model.params();
    std::vector<double> previous(mle.begin(), mle.end());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        if (!(grid[g] > 0.0)) {
            ++curve.gaps;
            continue;
        }
        double best = kNegInf;
        std::vector<double> best_theta;
        // Warm start from the neighbouring grid point, then from the full MLE.
        const std::vector<std::vector<double>> seeds = {previous, {mle.begin(), mle.end()}};
        for (std::vector<double> start : seeds) {
            start[fixed] = grid[g];
            problem.base = start;
            try {
                if (problem.free.empty()) {
                    const auto th = problem.expand({});
                    const double ll = th.empty() ? kNegInf : log_likelihood(ModelSpec(family, th), data);
                    if (ll > best) {
                        best = ll;
                        best_theta = th;
                    }
                    continue;
                }
                const Attempt a = run_start(problem, start, config.optim);
                if (a.converged && a.loglik > best) {
                    best = a.loglik;
                    best_theta = a.theta;
                }
            } catch (const Error&) {
            }
        }
        if (std::isfinite(best)) {
            curve.profile_loglik[g] = best;
            previous = best_theta;
        } else {
            ++curve.gaps;
        }
    }
    return curve;
}

}  // namespace ogeg
