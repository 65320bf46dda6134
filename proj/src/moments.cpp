#include "ogeg/moments.hpp"

#include <cmath>

namespace ogeg {

namespace {

double quadrature_moment(const OgegParams& params, int r, const ToleranceConfig& tol) {
    const ModelSpec model = ModelSpec::ogeg(params);
    return expect(model, [r](double x) { return std::pow(x, r); }, tol);
}

MomentResult monte_carlo_moment(const MomentRequest& req) {
    if (req.mc_samples < 2) throw DomainError("moment: Monte-Carlo needs at least 2 draws");
    const ModelSpec model = ModelSpec::ogeg(req.params);
    RandomSource rng(req.seed);
    // Welford running mean / variance of X^r.
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < req.mc_samples; ++i) {
        const double v = std::pow(quantile(model, rng.uniform()), req.r);
        const double delta = v - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (v - mean);
    }
    const auto n = static_cast<double>(req.mc_samples);
    return {mean, std::sqrt(m2 / (n - 1.0) / n), 0.0};
}

// Generalized binomial coefficient C(a, i) for real a.
double binom_real(double a, int i) {
    double out = 1.0;
    for (int t = 0; t < i; ++t) out *= (a - t) / (t + 1);
    return out;
}

MomentResult series_moment(const MomentRequest& req) {
    const auto& p = req.params;
    const SeriesCaps& cap = req.caps;
    if (cap.i < 0 || cap.j < 0 || cap.k < 0 || cap.l < 0 || cap.m < 0) {
        throw DomainError("moment: series caps must be nonnegative");
    }
    const int r = req.r;
    const double log_r_fact = std::lgamma(r + 1.0);
    double total = 0.0;
    double last_layer = 0.0;
    for (int i = 0; i <= cap.i; ++i) {
        const double bi = binom_real(p.beta - 1.0, i);
        for (int j = 0; j <= cap.j; ++j) {
            for (int k = 0; k <= std::min(j, cap.k); ++k) {
                const double bjk = std::exp(std::lgamma(j + 1.0) - std::lgamma(k + 1.0) -
                                            std::lgamma(j - k + 1.0));
                for (int l = 0; l <= cap.l; ++l) {
                    for (int m = 0; m <= std::min(l, cap.m); ++m) {
                        const double blm = std::exp(std::lgamma(l + 1.0) - std::lgamma(m + 1.0) -
                                                    std::lgamma(l - m + 1.0));
                        const double sign = ((i + j + k + m) % 2 == 0) ? 1.0 : -1.0;
                        // Magnitude assembled in log space; the generalized
                        // binomial keeps its own sign.
                        const double log_mag =
                            (j + 1.0) * std::log(p.alpha) + std::log(p.beta) +
                            (l + 1.0) * std::log(p.lambda) + j * std::log(i + 1.0) +
                            l * std::log(j - k + 1.0) + log_r_fact -
                            (l + r + 1.0) * std::log(p.c) - std::lgamma(j + 1.0) -
                            std::lgamma(l + 1.0) - (r + 1.0) * std::log(l - m + 1.0);
                        const double term = sign * bi * bjk * blm * std::exp(log_mag);
                        if (!std::isfinite(term)) {
                            throw NumericalError("moment series: term overflow at (i,j,k,l,m) = (" +
                                                 std::to_string(i) + "," + std::to_string(j) + "," +
                                                 std::to_string(k) + "," + std::to_string(l) + "," +
                                                 std::to_string(m) + ")");
                        }
                        total += term;
                        if (i == cap.i) last_layer += std::abs(term);
                    }
                }
            }
        }
    }
    return {total, 0.0, last_layer};
}

}  // namespace

MomentResult moment(const MomentRequest& req) {
    req.params.validate();
    if (req.r < 1) throw DomainError("moment: order r must be >= 1");
    switch (req.method) {
        case MomentMethod::Quadrature: return {quadrature_moment(req.params, req.r, req.tol), 0.0, 0.0};
        case MomentMethod::MonteCarlo: return monte_carlo_moment(req);
        case MomentMethod::SeriesPartial: return series_moment(req);
    }
    return {};
}

ShapeSummary central_moments_and_shape(const OgegParams& params, const ToleranceConfig& tol) {
    params.validate();
    double raw[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
    for (int r = 1; r <= 4; ++r) raw[r] = quadrature_moment(params, r, tol);
    const double mu = raw[1];
    const double var = raw[2] - mu * mu;
    if (!(var > 0.0)) {
        throw NumericalError("central moments: non-positive variance from quadrature");
    }
    const double m3 = raw[3] - 3.0 * mu * raw[2] + 2.0 * mu * mu * mu;
    const double m4 = raw[4] - 4.0 * mu * raw[3] + 6.0 * mu * mu * raw[2] - 3.0 * mu * mu * mu * mu;
    return {mu, var, m3 / std::pow(var, 1.5), m4 / (var * var)};
}

}  // namespace ogeg
