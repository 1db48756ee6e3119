#pragma once
// Independent reference computations used by the tests. None of them calls
// into the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace oracle {

/// Direct long-double evaluation of the Lorentz-Zygmund sum.
inline double lz_sum(std::vector<double> a, double p, double r, double gamma) {
  std::sort(a.begin(), a.end(), std::greater<>{});
  if (std::isinf(p)) {
    long double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const long double n = static_cast<long double>(i + 1);
      m = std::max(m, std::pow(n, static_cast<long double>(r)) *
                          std::pow(1.0L + std::log(n), static_cast<long double>(gamma)) * a[i]);
    }
    return static_cast<double>(m);
  }
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const long double n = static_cast<long double>(i + 1);
    s += std::pow(n, static_cast<long double>(r * p - 1)) *
         std::pow(1.0L + std::log(n), static_cast<long double>(gamma * p)) *
         std::pow(static_cast<long double>(a[i]), static_cast<long double>(p));
  }
  return static_cast<double>(std::pow(s, 1.0L / p));
}

/// Eigenvalues of a symmetric 3x3 matrix (trigonometric method), descending.
inline std::array<double, 3> sym3_eigenvalues(const std::array<std::array<double, 3>, 3>& m) {
  const double p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
  const double q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
  if (p1 == 0.0) {
    std::array<double, 3> e{m[0][0], m[1][1], m[2][2]};
    std::sort(e.begin(), e.end(), std::greater<>{});
    return e;
  }
  const double p2 = (m[0][0] - q) * (m[0][0] - q) + (m[1][1] - q) * (m[1][1] - q) + (m[2][2] - q) * (m[2][2] - q) + 2 * p1;
  const double p = std::sqrt(p2 / 6.0);
  std::array<std::array<double, 3>, 3> b{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = (m[i][j] - (i == j ? q : 0.0)) / p;
  const double det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                     b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  const double r = std::clamp(det / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2 * p * std::cos(phi);
  const double e3 = q + 2 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  return {e1, 3 * q - e1 - e3, e3};
}

/// Singular values of a 2x2 or 3x3 matrix from the characteristic polynomial
/// of A^T A.
inline std::vector<double> char_poly_singular_values(const std::vector<std::vector<double>>& a) {
  const std::size_t n = a.size();
  std::array<std::array<double, 3>, 3> g{};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) g[i][j] += a[k][i] * a[k][j];
  if (n == 2) {
    const double tr = g[0][0] + g[1][1];
    const double det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
    return {std::sqrt(tr / 2 + disc), std::sqrt(std::max(0.0, tr / 2 - disc))};
  }
  const auto e = sym3_eigenvalues(g);
  return {std::sqrt(std::max(0.0, e[0])), std::sqrt(std::max(0.0, e[1])), std::sqrt(std::max(0.0, e[2]))};
}

/// Spectral norm of a small square matrix via char_poly_singular_values.
inline double spectral(const std::vector<std::vector<double>>& a) { return char_poly_singular_values(a)[0]; }

/// Minimises f over a box by a uniform grid followed by successive local
/// refinements around the best point.
inline double grid_minimise(const std::function<double(const std::vector<double>&)>& f, std::vector<double> lo,
                            std::vector<double> hi, int points, int rounds) {
  const std::size_t d = lo.size();
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> arg(d);
  for (int round = 0; round < rounds; ++round) {
    std::vector<int> idx(d, 0);
    while (true) {
      std::vector<double> x(d);
      for (std::size_t i = 0; i < d; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * idx[i] / (points - 1);
      const double v = f(x);
      if (v < best) {
        best = v;
        arg = x;
      }
      std::size_t k = 0;
      while (k < d && ++idx[k] == points) idx[k++] = 0;
      if (k == d) break;
    }
    for (std::size_t i = 0; i < d; ++i) {
      const double w = (hi[i] - lo[i]) * 2.0 / (points - 1);
      lo[i] = arg[i] - w;
      hi[i] = arg[i] + w;
    }
  }
  return best;
}

/// Best rank-k spectral distance of a 2x2 or 3x3 matrix by brute force over
/// rank-k matrices A P_V (V a k-dimensional subspace), k = n - 1 or 1.
inline double best_rank_k_distance(const std::vector<std::vector<double>>& a, std::size_t k) {
  const std::size_t n = a.size();
  auto residual = [&](const std::vector<double>& w, bool w_is_kernel) {
    // P = projection onto span(w) (unit); residual A - A P_V.
    std::vector<std::vector<double>> pw(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) pw[i][j] = w[i] * w[j];
    // If w spans V (k = 1): residual = A (I - P_w); if w spans V-perp: residual = A P_w.
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) {
          const double proj = w_is_kernel ? pw[l][j] : (l == j ? 1.0 : 0.0) - pw[l][j];
          m[i][j] += a[i][l] * proj;
        }
    return spectral(m);
  };
  if (k == 0) return spectral(a);
  const bool kernel = k == n - 1;  // V-perp is one-dimensional
  if (n == 2) {
    return grid_minimise([&](const std::vector<double>& th) { return residual({std::cos(th[0]), std::sin(th[0])}, kernel); },
                         {0.0}, {std::numbers::pi}, 721, 6);
  }
  return grid_minimise(
      [&](const std::vector<double>& ang) {
        const std::vector<double> w{std::sin(ang[0]) * std::cos(ang[1]), std::sin(ang[0]) * std::sin(ang[1]),
                                    std::cos(ang[0])};
        return residual(w, kernel);
      },
      {0.0, 0.0}, {std::numbers::pi, 2 * std::numbers::pi}, 121, 8);
}

/// K-functional of (l1^n, linf^n) by brute force: for a fixed bound s on
/// ||y||_inf the best y clamps x to [-s, s], so minimise over s on a grid.
inline double k_l1linf_bruteforce(const std::vector<double>& x, double t) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  auto cost = [&](const std::vector<double>& s) {
    const double ss = std::max(0.0, s[0]);
    double c = t * ss;
    for (double v : x) c += std::max(0.0, std::abs(v) - ss);
    return c;
  };
  return grid_minimise(cost, {0.0}, {m}, 2001, 8);
}

}  // namespace oracle
