#include "ogeg/distributions.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

namespace ogeg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::array<std::string_view, 1> kNamesE = {"alpha"};
constexpr std::array<std::string_view, 2> kNamesGE = {"alpha", "beta"};
constexpr std::array<std::string_view, 2> kNamesG = {"lambda", "c"};
constexpr std::array<std::string_view, 3> kNamesGG = {"lambda", "c", "beta"};
constexpr std::array<std::string_view, 4> kNamesBG = {"alpha", "beta", "lambda", "c"};
constexpr std::array<std::string_view, 4> kNamesOGEG = {"alpha", "lambda", "c", "beta"};

// Inner quantities of the OGE-G law at x > 0:
//   H = (lambda/c)(e^{cx}-1),  z = alpha (e^H - 1),  F = (1 - e^{-z})^beta.
struct OgegTerms {
    double H;
    double z;
};

OgegTerms ogeg_terms(const OgegParams& p, double x) {
    const double H = gompertz_cum_hazard(x, p.lambda, p.c);
    // alpha*expm1(H) without overflow in the intermediate e^H.
    const double z = H > 700.0 ? std::exp(std::log(p.alpha) + log_expm1(H)) : p.alpha * std::expm1(H);
    return {H, z};
}

double ogeg_log_pdf(const OgegParams& p, double x) {
    const auto [H, z] = ogeg_terms(p, x);
    if (!std::isfinite(z)) return -kInf;
    return std::log(p.alpha) + std::log(p.beta) + std::log(p.lambda) + p.c * x + H - z +
           (p.beta - 1.0) * log1mexp(z);
}

double ogeg_cdf(const OgegParams& p, double x) {
    const double z = ogeg_terms(p, x).z;
    return std::exp(p.beta * log1mexp(z));
}

double ogeg_log_survival(const OgegParams& p, double x) {
    const double z = ogeg_terms(p, x).z;
    if (!std::isfinite(z)) return -kInf;
    return log1m_pow1mexp(z, p.beta);
}

double ogeg_quantile(const OgegParams& p, double q) {
    // log(1 - q^{1/beta}), then unwind the three nested exponentials.
    const double log_tail = log1mexp(-std::log(q) / p.beta);
    const double H = std::log1p(-log_tail / p.alpha);
    return std::log1p(p.c / p.lambda * H) / p.c;
}

// Exponentiated law on an inner cumulative hazard z: F = (1 - e^{-z})^beta.
double exp_cdf(double z, double beta) { return std::exp(beta * log1mexp(z)); }

// Cumulative hazard level at which (1 - e^{-z})^beta = q.
double exp_inverse(double q, double beta) { return -log1mexp(-std::log(q) / beta); }

double gompertz_from_hazard(double H, double lambda, double c) {
    return std::log1p(c * H / lambda) / c;
}

struct BgParams {
    double a;
    double b;
    double lambda;
    double c;
};

BgParams bg(std::span<const double> p) { return {p[0], p[1], p[2], p[3]}; }

double bg_cdf(const BgParams& p, double x) {
    const double H = gompertz_cum_hazard(x, p.lambda, p.c);
    return boost::math::ibeta(p.a, p.b, -std::expm1(-H));
}

double bg_survival(const BgParams& p, double x) {
    const double H = gompertz_cum_hazard(x, p.lambda, p.c);
    return boost::math::ibeta(p.b, p.a, std::exp(-H));
}

double bg_log_pdf(const BgParams& p, double x) {
    const double H = gompertz_cum_hazard(x, p.lambda, p.c);
    if (!std::isfinite(H)) return -kInf;
    const double log_beta_fn = std::lgamma(p.a) + std::lgamma(p.b) - std::lgamma(p.a + p.b);
    return std::log(p.lambda) + p.c * x - p.b * H + (p.a - 1.0) * log1mexp(H) - log_beta_fn;
}

double bg_quantile(const BgParams& p, double q) {
    auto gap = [&](double x) { return bg_cdf(p, x) - q; };
    double hi = 1.0 / p.c;
    for (int i = 0; i < 200 && gap(hi) < 0.0; ++i) hi *= 2.0;
    ToleranceConfig tol{1e-300, 1e-15, 400};
    try {
        return find_root(gap, {0.0, hi}, tol);
    } catch (const ConvergenceError& e) {
        return e.best_iterate();
    }
}

}  // namespace

void OgegParams::validate() const {
    for (double v : {alpha, lambda, c, beta}) {
        if (!std::isfinite(v) || v <= 0.0) {
            throw DomainError("OGE-G parameters must be finite and strictly positive");
        }
    }
}

OgegParams OgegParams::from(std::span<const double> v) {
    if (v.size() != 4) throw DomainError("OGE-G needs 4 parameters (alpha, lambda, c, beta)");
    OgegParams p{v[0], v[1], v[2], v[3]};
    p.validate();
    return p;
}

std::string_view family_id(Family family) {
    switch (family) {
        case Family::E: return "e";
        case Family::GE: return "ge";
        case Family::G: return "g";
        case Family::GG: return "gg";
        case Family::BG: return "bg";
        case Family::OGEG: return "ogeg";
    }
    return "?";
}

std::string_view family_label(Family family) {
    switch (family) {
        case Family::E: return "E";
        case Family::GE: return "GE";
        case Family::G: return "G";
        case Family::GG: return "GG";
        case Family::BG: return "BG";
        case Family::OGEG: return "OGE-G";
    }
    return "?";
}

Family parse_family(std::string_view text) {
    std::string lower;
    for (char ch : text) {
        if (ch != '-' && ch != '_') lower.push_back(static_cast<char>(std::tolower(ch)));
    }
    for (Family f : kAllFamilies) {
        if (lower == family_id(f)) return f;
    }
    throw DomainError("unknown family '" + std::string(text) + "' (expected e, ge, g, gg, bg, ogeg)");
}

std::size_t param_count(Family family) { return param_names(family).size(); }

std::span<const std::string_view> param_names(Family family) {
    switch (family) {
        case Family::E: return kNamesE;
        case Family::GE: return kNamesGE;
        case Family::G: return kNamesG;
        case Family::GG: return kNamesGG;
        case Family::BG: return kNamesBG;
        case Family::OGEG: return kNamesOGEG;
    }
    return {};
}

ModelSpec::ModelSpec(Family family, std::vector<double> params)
    : family_(family), params_(std::move(params)) {
    if (params_.size() != param_count(family_)) {
        throw DomainError(std::string(family_label(family_)) + " takes " +
                          std::to_string(param_count(family_)) + " parameters, got " +
                          std::to_string(params_.size()));
    }
    for (std::size_t i = 0; i < params_.size(); ++i) {
        if (!std::isfinite(params_[i]) || params_[i] <= 0.0) {
            throw DomainError(std::string(family_label(family_)) + " parameter " +
                              std::string(param_names(family_)[i]) +
                              " must be finite and strictly positive");
        }
    }
}

ModelSpec ModelSpec::ogeg(const OgegParams& p) {
    const auto a = p.as_array();
    return ModelSpec(Family::OGEG, {a.begin(), a.end()});
}

double ModelSpec::param(std::string_view name) const {
    const auto names = param_names(family_);
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return params_[i];
    }
    throw DomainError(std::string(family_label(family_)) + " has no parameter '" +
                      std::string(name) + "'");
}

OgegParams ModelSpec::ogeg_params() const {
    if (family_ != Family::OGEG) {
        throw DomainError("model is " + std::string(family_label(family_)) + ", not OGE-G");
    }
    return {params_[0], params_[1], params_[2], params_[3]};
}

double RandomSource::uniform() {
    // (k + 0.5) / 2^53 never hits 0 or 1.
    const std::uint64_t k = engine_() >> 11;
    return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double cdf(const ModelSpec& model, double x) {
    if (!(x > 0.0)) return 0.0;
    const auto p = model.params();
    switch (model.family()) {
        case Family::E: return -std::expm1(-p[0] * x);
        case Family::GE: return exp_cdf(p[0] * x, p[1]);
        case Family::G: return -std::expm1(-gompertz_cum_hazard(x, p[0], p[1]));
        case Family::GG: return exp_cdf(gompertz_cum_hazard(x, p[0], p[1]), p[2]);
        case Family::BG: return bg_cdf(bg(p), x);
        case Family::OGEG: return ogeg_cdf(model.ogeg_params(), x);
    }
    return 0.0;
}

double log_pdf(const ModelSpec& model, double x) {
    if (!(x > 0.0)) {
        throw DomainError("log_pdf: x must be > 0, got " + std::to_string(x));
    }
    const auto p = model.params();
    switch (model.family()) {
        case Family::E: return std::log(p[0]) - p[0] * x;
        case Family::GE: {
            const double z = p[0] * x;
            return std::log(p[0]) + std::log(p[1]) - z + (p[1] - 1.0) * log1mexp(z);
        }
        case Family::G: {
            const double H = gompertz_cum_hazard(x, p[0], p[1]);
            if (!std::isfinite(H)) return -kInf;
            return std::log(p[0]) + p[1] * x - H;
        }
        case Family::GG: {
            const double H = gompertz_cum_hazard(x, p[0], p[1]);
            if (!std::isfinite(H)) return -kInf;
            return std::log(p[2]) + std::log(p[0]) + p[1] * x - H + (p[2] - 1.0) * log1mexp(H);
        }
        case Family::BG: return bg_log_pdf(bg(p), x);
        case Family::OGEG: return ogeg_log_pdf(model.ogeg_params(), x);
    }
    return -kInf;
}

double pdf(const ModelSpec& model, double x) {
    if (!(x > 0.0)) return 0.0;
    return std::exp(log_pdf(model, x));
}

double log_survival(const ModelSpec& model, double x) {
    if (!(x > 0.0)) return 0.0;
    const auto p = model.params();
    switch (model.family()) {
        case Family::E: return -p[0] * x;
        case Family::GE: return log1m_pow1mexp(p[0] * x, p[1]);
        case Family::G: return -gompertz_cum_hazard(x, p[0], p[1]);
        case Family::GG: {
            const double H = gompertz_cum_hazard(x, p[0], p[1]);
            if (!std::isfinite(H)) return -kInf;
            return log1m_pow1mexp(H, p[2]);
        }
        case Family::BG: return std::log(bg_survival(bg(p), x));
        case Family::OGEG: return ogeg_log_survival(model.ogeg_params(), x);
    }
    return 0.0;
}

double survival(const ModelSpec& model, double x) {
    if (!(x > 0.0)) return 1.0;
    if (model.family() == Family::BG) return bg_survival(bg(model.params()), x);
    return std::exp(log_survival(model, x));
}

HazardValue hazard(const ModelSpec& model, double x) {
    if (!(x > 0.0)) {
        throw DomainError("hazard: x must be > 0, got " + std::to_string(x));
    }
    const auto p = model.params();
    // Closed forms where the ratio is free of cancellation.
    if (model.family() == Family::E) return {p[0], false};
    if (model.family() == Family::G) return {p[0] * std::exp(p[1] * x), false};

    const double ls = log_survival(model, x);
    if (ls == -kInf) {
        if (model.family() == Family::OGEG) {
            // Far tail: log h -> log(alpha lambda) + cx + H once (1-e^{-z})^{beta-1} -> 1.
            const OgegParams q = model.ogeg_params();
            const double H = gompertz_cum_hazard(x, q.lambda, q.c);
            const double v = std::exp(std::log(q.alpha * q.lambda) + q.c * x + H);
            return {v, !std::isfinite(v)};
        }
        return {kInf, true};
    }
    return {std::exp(log_pdf(model, x) - ls), false};
}

double quantile(const ModelSpec& model, double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw DomainError("quantile: q must lie in (0, 1), got " + std::to_string(q));
    }
    const auto p = model.params();
    switch (model.family()) {
        case Family::E: return -std::log1p(-q) / p[0];
        case Family::GE: return exp_inverse(q, p[1]) / p[0];
        case Family::G: return gompertz_from_hazard(-std::log1p(-q), p[0], p[1]);
        case Family::GG: return gompertz_from_hazard(exp_inverse(q, p[2]), p[0], p[1]);
        case Family::BG: return bg_quantile(bg(p), q);
        case Family::OGEG: return ogeg_quantile(model.ogeg_params(), q);
    }
    return 0.0;
}

double median(const OgegParams& params) {
    params.validate();
    return ogeg_quantile(params, 0.5);
}

double log_density_slope(const OgegParams& p, double x) {
    const auto [H, z] = ogeg_terms(p, x);
    const double growth = p.lambda * std::exp(p.c * x);
    const double eH = std::exp(H);
    // e^H / (e^z - 1), in log space; vanishes once z overflows.
    double shape_term = 0.0;
    if (p.beta != 1.0 && std::isfinite(z)) {
        shape_term = (p.beta - 1.0) * p.alpha * std::exp(H - log_expm1(z));
    }
    return p.c + growth * (1.0 - p.alpha * eH + shape_term);
}

ModeResult mode(const OgegParams& params) {
    params.validate();
    if (params.beta < 1.0) return {0.0, ModeKind::Divergent};
    // Slope at 0+: +inf for beta > 1, c + lambda(1 - alpha) for beta == 1.
    if (params.beta == 1.0 && params.c + params.lambda * (1.0 - params.alpha) <= 0.0) {
        return {0.0, ModeKind::Boundary};
    }
    auto slope = [&](double x) { return log_density_slope(params, x); };
    double lo = 0.0;
    double hi = 1.0 / params.c;
    const double limit = 50.0 / params.c;
    while (slope(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > limit) {
            throw ConvergenceError("mode: no sign change of the density slope up to 50/c", lo);
        }
    }
    const ToleranceConfig tol{1e-300, 4e-16, 2000};
    return {find_root(slope, {lo, hi}, tol), ModeKind::Interior};
}

Dataset sample(const ModelSpec& model, std::size_t n, RandomSource& rng) {
    if (n == 0) throw DomainError("sample: n must be >= 1");
    std::vector<double> draws(n);
    for (auto& x : draws) x = quantile(model, rng.uniform());
    return Dataset(std::move(draws), "sample:" + std::string(family_id(model.family())) +
                                         ":seed=" + std::to_string(rng.seed()));
}

double expect(const ModelSpec& model, const ScalarFn& g, const ToleranceConfig& tol) {
    auto integrand = [&](double u) {
        if (!(u > 0.0 && u < 1.0)) return 0.0;
        return g(quantile(model, u));
    };
    return integrate(integrand, 0.0, 1.0, tol);
}

}  // namespace ogeg
