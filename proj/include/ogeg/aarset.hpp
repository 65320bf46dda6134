#pragma once

#include "ogeg/dataset.hpp"
#include "ogeg/distributions.hpp"

#include <array>
#include <optional>
#include <span>

namespace ogeg {

/// Aarset's 50 device failure times (bathtub-shaped hazard).
std::span<const double> aarset_values();
Dataset aarset_dataset();

/// Literature reference values for the six families fitted to the Aarset
/// data: maximized -L, information criteria and K-S fit statistics.
struct ReferenceRow {
    Family family;
    std::array<double, 4> params;  // family order, unused slots zero
    double neg_loglik;
    double aic;
    double aicc;
    double bic;
    double ks;
    double ks_pvalue;
};

std::span<const ReferenceRow> aarset_reference();
std::optional<ReferenceRow> aarset_reference(Family family);

}  // namespace ogeg
