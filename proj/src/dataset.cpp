#include "ogeg/dataset.hpp"

#include "ogeg/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ogeg {

Dataset::Dataset(std::vector<double> values, std::string label)
    : values_(std::move(values)), label_(std::move(label)) {
    if (values_.empty()) {
        throw DataError("dataset '" + label_ + "' is empty");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]) || values_[i] <= 0.0) {
            throw DataError("dataset '" + label_ + "': value #" + std::to_string(i + 1) +
                            " is not a positive finite lifetime");
        }
    }
    sorted_ = values_;
    std::sort(sorted_.begin(), sorted_.end());
}

double Dataset::mean() const {
    return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(size());
}

}  // namespace ogeg
