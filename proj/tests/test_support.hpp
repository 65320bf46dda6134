#pragma once

#include "ogeg/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ogeg::testing {

inline double log_uniform(std::mt19937_64& gen, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(gen));
}

/// Parameters spread over a few decades but away from overflow regimes.
inline OgegParams random_params(std::mt19937_64& gen) {
    return {log_uniform(gen, 0.1, 5.0), log_uniform(gen, 0.05, 2.0), log_uniform(gen, 0.05, 2.0),
            log_uniform(gen, 0.3, 5.0)};
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace ogeg::testing
