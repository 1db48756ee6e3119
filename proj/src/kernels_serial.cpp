#include "scalelab/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace scalelab::kernels {

double PowerLogWeight::operator()(std::size_t n) const noexcept {
  const double x = static_cast<double>(n);
  double w = power == 0.0 ? 1.0 : std::pow(x, power);
  if (log_power != 0.0) w *= std::pow(1.0 + std::log(x), log_power);
  return w;
}

namespace {

inline double term(double v, double weight, double p) {
  if (v == 0.0) return 0.0;
  return weight * (p == 1.0 ? v : std::pow(v, p));
}

}  // namespace

namespace serial {

double weighted_power_sum(std::span<const double> v, PowerLogWeight w, double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += term(v[i], w(i + 1), p);
  return s;
}

void weighted_power_prefix(std::span<const double> v, PowerLogWeight w, double p, std::span<double> out) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += term(v[i], w(i + 1), p);
    out[i] = s;
  }
}

void weighted_sup_prefix(std::span<const double> v, PowerLogWeight w, std::span<double> out) {
  double m = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) m = std::max(m, w(i + 1) * v[i]);
    out[i] = m;
  }
}

double weight_sum(PowerLogWeight w, std::size_t first, std::size_t last) {
  double s = 0.0;
  for (std::size_t n = first; n <= last; ++n) s += w(n);
  return s;
}

}  // namespace serial

double weighted_power_sum(std::span<const double> v, PowerLogWeight w, double p) {
  return v.size() <= kChunk ? serial::weighted_power_sum(v, w, p) : parallel::weighted_power_sum(v, w, p);
}

void weighted_power_prefix(std::span<const double> v, PowerLogWeight w, double p, std::span<double> out) {
  if (v.size() <= kChunk) {
    serial::weighted_power_prefix(v, w, p, out);
  } else {
    parallel::weighted_power_prefix(v, w, p, out);
  }
}

void weighted_sup_prefix(std::span<const double> v, PowerLogWeight w, std::span<double> out) {
  if (v.size() <= kChunk) {
    serial::weighted_sup_prefix(v, w, out);
  } else {
    parallel::weighted_sup_prefix(v, w, out);
  }
}

double weight_sum(PowerLogWeight w, std::size_t first, std::size_t last) {
  if (last < first) return 0.0;
  return last - first + 1 <= kChunk ? serial::weight_sum(w, first, last) : parallel::weight_sum(w, first, last);
}

}  // namespace scalelab::kernels
