#include "scalelab/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scalelab {

PiecewiseLinear::PiecewiseLinear(std::vector<double> xs, std::vector<double> ys) : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size() || xs_.size() < 2) throw std::invalid_argument("PiecewiseLinear: need >= 2 knots");
  if (xs_.front() != 0.0 || xs_.back() != 1.0) throw std::invalid_argument("PiecewiseLinear: knots must span [0, 1]");
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
    if (!(xs_[i] < xs_[i + 1])) throw std::invalid_argument("PiecewiseLinear: knots must increase");
  }
  for (double y : ys_)
    if (!std::isfinite(y)) throw std::invalid_argument("PiecewiseLinear: non-finite value");
}

PiecewiseLinear PiecewiseLinear::constant(double c) { return PiecewiseLinear({0.0, 1.0}, {c, c}); }

PiecewiseLinear PiecewiseLinear::ramp(double a, double b) {
  if (!(0.0 < a && a < b && b < 1.0)) throw std::invalid_argument("ramp: needs 0 < a < b < 1");
  return PiecewiseLinear({0.0, a, b, 1.0}, {-1.0, -1.0, 1.0, 1.0});
}

PiecewiseLinear PiecewiseLinear::interpolate(const PiecewiseLinear& f, std::size_t m) {
  if (m == 0) throw std::invalid_argument("interpolate: need at least one interval");
  std::vector<double> xs(m + 1), ys(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    xs[i] = i == m ? 1.0 : static_cast<double>(i) / static_cast<double>(m);
    ys[i] = f(xs[i]);
  }
  return PiecewiseLinear(std::move(xs), std::move(ys));
}

double PiecewiseLinear::operator()(double x) const {
  if (x <= 0.0) return ys_.front();
  if (x >= 1.0) return ys_.back();
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - xs_.begin());
  const std::size_t i = j - 1;
  const double w = (x - xs_[i]) / (xs_[j] - xs_[i]);
  return ys_[i] + w * (ys_[j] - ys_[i]);
}

double PiecewiseLinear::sup_norm() const {
  double m = 0.0;
  for (double y : ys_) m = std::max(m, std::abs(y));
  return m;
}

double PiecewiseLinear::lipschitz() const {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
    m = std::max(m, std::abs(ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]));
  }
  return m;
}

PiecewiseLinear PiecewiseLinear::scaled(double lambda) const {
  PiecewiseLinear g = *this;
  for (double& y : g.ys_) y *= lambda;
  return g;
}

std::vector<double> PiecewiseLinear::sample(std::size_t points) const {
  if (points < 2) throw std::invalid_argument("sample: need >= 2 points");
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) out[i] = (*this)(static_cast<double>(i) / static_cast<double>(points - 1));
  return out;
}

double sup_distance(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  // f - g is linear between consecutive knots of the union, so its sup is
  // attained at a knot.
  double m = 0.0;
  for (std::size_t i = 0; i < f.xs_.size(); ++i) m = std::max(m, std::abs(f.ys_[i] - g(f.xs_[i])));
  for (std::size_t i = 0; i < g.xs_.size(); ++i) m = std::max(m, std::abs(f(g.xs_[i]) - g.ys_[i]));
  return m;
}

}  // namespace scalelab
