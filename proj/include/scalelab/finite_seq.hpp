#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace scalelab {

/// Finite prefix of a non-negative real sequence.
///
/// Entries are stored in the order given. Norm sums treat position 0 as the
/// index n = 1. The sorted flag is derived from the data on construction and
/// is true iff the values are non-increasing.
class FiniteSeq {
public:
  FiniteSeq() = default;

  /// Throws std::invalid_argument on negative or non-finite entries.
  explicit FiniteSeq(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  bool is_non_increasing() const noexcept { return sorted_; }

  double operator[](std::size_t i) const { return values_[i]; }

  /// First n entries (or the whole sequence if shorter).
  FiniteSeq prefix(std::size_t n) const;

  /// Elementwise multiplication by |lambda|.
  FiniteSeq scaled(double lambda) const;

  friend bool operator==(const FiniteSeq&, const FiniteSeq&) = default;

private:
  std::vector<double> values_;
  bool sorted_ = true;
};

}  // namespace scalelab
