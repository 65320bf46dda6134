#pragma once

#include <span>
#include <string>
#include <vector>

namespace ogeg {

/// A nonempty sample of strictly positive lifetimes. Keeps the values in the
/// order they were supplied and a sorted copy.
class Dataset {
  public:
    /// Throws DataError on an empty sample or a non-finite/nonpositive value.
    Dataset(std::vector<double> values, std::string label);

    std::span<const double> values() const { return values_; }
    std::span<const double> sorted() const { return sorted_; }
    const std::string& label() const { return label_; }
    std::size_t size() const { return values_.size(); }

    double min() const { return sorted_.front(); }
    double max() const { return sorted_.back(); }
    double mean() const;

  private:
    std::vector<double> values_;
    std::vector<double> sorted_;
    std::string label_;
};

}  // namespace ogeg
