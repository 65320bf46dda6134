#include "ogeg/aarset.hpp"

#include <algorithm>

namespace ogeg {

namespace {

constexpr std::array<double, 50> kAarset = {
    0.1, 0.2, 1,  1,  1,  1,  1,  2,  3,  6,  7,  11, 12, 18, 18, 18, 18,
    18,  21,  32, 36, 40, 45, 46, 47, 50, 55, 60, 63, 63, 67, 67, 67, 67,
    72,  75,  79, 82, 82, 83, 84, 84, 84, 85, 85, 85, 85, 85, 86, 86};

// The OGE-G aic/aicc entries are reproduced as published; they disagree with
// 2k + 2(-L) for the same row (see model_selection's consistency notes).
constexpr std::array<ReferenceRow, 6> kReference = {{
    {Family::E, {0.0219, 0, 0, 0}, 241.0896, 484.1792, 484.2625, 486.0912, 0.19110, 0.0519},
    {Family::GE, {0.0212, 0.9012, 0, 0}, 240.3855, 484.7710, 485.0264, 488.5951, 0.19400, 0.0514},
    {Family::G, {0.00970, 0.0203, 0, 0}, 235.3308, 474.6617, 475.1834, 482.3977, 0.16960, 0.1123},
    {Family::GG, {0.00010, 0.0828, 0.2625, 0}, 222.2441, 450.4881, 451.0099, 456.2242, 0.14090, 0.2739},
    {Family::BG, {0.2158, 0.2467, 0.00030, 0.0882}, 220.6714, 449.3437, 450.2326, 456.9918, 0.13220, 0.3456},
    {Family::OGEG, {0.0400, 0.000345, 0.0780, 0.1940}, 215.9735, 423.9470, 424.8359, 447.5951, 0.13205, 0.3476},
}};

}  // namespace

std::span<const double> aarset_values() { return kAarset; }

Dataset aarset_dataset() { return Dataset({kAarset.begin(), kAarset.end()}, "aarset"); }

std::span<const ReferenceRow> aarset_reference() { return kReference; }

std::optional<ReferenceRow> aarset_reference(Family family) {
    const auto it = std::find_if(kReference.begin(), kReference.end(),
                                 [family](const ReferenceRow& r) { return r.family == family; });
    if (it == kReference.end()) return std::nullopt;
    return *it;
}

}  // namespace ogeg
