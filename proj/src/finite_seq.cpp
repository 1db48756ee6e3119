#include "scalelab/finite_seq.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace scalelab {

FiniteSeq::FiniteSeq(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("FiniteSeq: entry " + std::to_string(i) +
                                  " is negative or non-finite");
    }
  }
  sorted_ = std::is_sorted(values_.begin(), values_.end(), std::greater<>{});
}

FiniteSeq FiniteSeq::prefix(std::size_t n) const {
  n = std::min(n, values_.size());
  return FiniteSeq(std::vector<double>(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(n)));
}

FiniteSeq FiniteSeq::scaled(double lambda) const {
  std::vector<double> out(values_);
  const double a = std::abs(lambda);
  for (auto& v : out) v *= a;
  return FiniteSeq(std::move(out));
}

}  // namespace scalelab
