#pragma once

#include "ogeg/distributions.hpp"

#include <cstdint>

namespace ogeg {

enum class MomentMethod { Quadrature, MonteCarlo, SeriesPartial };

/// Index caps for the quintuple moment series: i <= I, j <= J, k <= min(j, K),
/// l <= L, m <= min(l, M).
struct SeriesCaps {
    int i = 10;
    int j = 10;
    int k = 10;
    int l = 10;
    int m = 10;
};

struct MomentRequest {
    OgegParams params;
    int r = 1;
    MomentMethod method = MomentMethod::Quadrature;
    SeriesCaps caps{};
    std::size_t mc_samples = 100000;
    std::uint64_t seed = 20160101;
    ToleranceConfig tol{};
};

struct MomentResult {
    double value = 0.0;
    /// Monte-Carlo standard error; 0 for the other methods.
    double std_error = 0.0;
    /// Series only: sum of |terms| with i at its cap.
    double last_layer = 0.0;
};

/// r-th raw moment E[X^r].
///
/// Quadrature is the reference path: the integral of x^r f(x) over (0, inf)
/// is evaluated as the integral of Q(u)^r over (0, 1). MonteCarlo averages
/// X^r over inverse-transform draws. SeriesPartial evaluates a truncated
/// quintuple series obtained by termwise expansion of the density; the
/// term integrals behind that series diverge, so its output is a diagnostic
/// only and must not be read as a moment estimate.
MomentResult moment(const MomentRequest& request);

struct ShapeSummary {
    double mean;
    double variance;
    double skewness;
    /// Standardized fourth central moment (not excess).
    double kurtosis;
};

/// From quadrature raw moments r = 1..4.
ShapeSummary central_moments_and_shape(const OgegParams& params, const ToleranceConfig& tol = {});

}  // namespace ogeg
