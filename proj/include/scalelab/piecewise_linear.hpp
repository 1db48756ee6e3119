#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace scalelab {

/// Continuous piecewise-linear function on [0, 1] given by its knots.
/// Sup norms, slopes and differences are computed exactly from the knots.
class PiecewiseLinear {
public:
  PiecewiseLinear() = default;
  /// Knots must start at 0, end at 1 and be strictly increasing.
  PiecewiseLinear(std::vector<double> xs, std::vector<double> ys);

  static PiecewiseLinear constant(double c);
  /// -1 on [0, a], linear on [a, b], 1 on [b, 1]. Needs 0 < a < b < 1.
  static PiecewiseLinear ramp(double a, double b);
  /// Interpolant of f on the uniform grid with m intervals.
  static PiecewiseLinear interpolate(const PiecewiseLinear& f, std::size_t m);

  const std::vector<double>& xs() const noexcept { return xs_; }
  const std::vector<double>& ys() const noexcept { return ys_; }

  double operator()(double x) const;
  double sup_norm() const;
  /// sup |g'|, the largest absolute slope.
  double lipschitz() const;
  /// max(sup |g|, sup |g'|); the infimum over C^1 functions near g.
  double c1_norm() const { return std::max(sup_norm(), lipschitz()); }

  PiecewiseLinear scaled(double lambda) const;
  std::vector<double> sample(std::size_t points) const;

  /// sup |f - g| over [0, 1], exact on the union of knots.
  friend double sup_distance(const PiecewiseLinear& f, const PiecewiseLinear& g);

private:
  std::vector<double> xs_{0.0, 1.0};
  std::vector<double> ys_{0.0, 0.0};
};

}  // namespace scalelab
