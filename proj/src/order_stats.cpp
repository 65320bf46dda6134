#include "ogeg/order_stats.hpp"

#include <cmath>
#include <limits>

namespace ogeg {

void OrderStatSpec::validate() const {
    if (n < 1 || r < 1 || r > n) {
        throw DomainError("order statistic requires 1 <= r <= n (got r=" + std::to_string(r) +
                          ", n=" + std::to_string(n) + ")");
    }
    params.validate();
}

double order_stat_pdf_direct(const OrderStatSpec& spec, double x) {
    spec.validate();
    if (!(x > 0.0)) return 0.0;
    const ModelSpec model = ModelSpec::ogeg(spec.params);
    const double log_f = log_pdf(model, x);
    if (log_f == -std::numeric_limits<double>::infinity()) return 0.0;
    const double log_F = std::log(cdf(model, x));
    const double log_S = log_survival(model, x);
    const double log_beta_fn =
        std::lgamma(spec.r) + std::lgamma(spec.n - spec.r + 1.0) - std::lgamma(spec.n + 1.0);
    double out = log_f - log_beta_fn;
    if (spec.r > 1) out += (spec.r - 1) * log_F;
    if (spec.n > spec.r) out += (spec.n - spec.r) * log_S;
    return std::exp(out);
}

double order_stat_pdf_mixture(const OrderStatSpec& spec, double x) {
    spec.validate();
    if (!(x > 0.0)) return 0.0;
    const int n = spec.n;
    const int r = spec.r;
    const double log_n_fact = std::lgamma(n + 1.0);
    double total = 0.0;
    for (int i = 0; i <= n - r; ++i) {
        // (-1)^i n! / [i! (r-1)! (n-r-i)! (r+i)]
        const double log_coef = log_n_fact - std::lgamma(i + 1.0) - std::lgamma(r) -
                                std::lgamma(n - r - i + 1.0) - std::log(r + i);
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        OgegParams shifted = spec.params;
        shifted.beta *= (r + i);
        total += sign * std::exp(log_coef) * pdf(ModelSpec::ogeg(shifted), x);
    }
    return total;
}

}  // namespace ogeg
