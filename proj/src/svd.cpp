#include "scalelab/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace scalelab {

namespace {

// Core routine for m >= n: columns of W = A V are orthogonalised in place.
Svd jacobi_tall(const Matrix& a, double rel_tol, std::size_t max_sweeps) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Matrix w = a;
  Matrix v = Matrix::identity(n);
  Svd out;
  for (out.sweeps = 0; out.sweeps < max_sweeps; ++out.sweeps) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          alpha += w(k, i) * w(k, i);
          beta += w(k, j) * w(k, j);
          gamma += w(k, i) * w(k, j);
        }
        if (gamma == 0.0 || std::abs(gamma) <= rel_tol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < m; ++k) {
          const double wi = w(k, i), wj = w(k, j);
          w(k, i) = c * wi - s * wj;
          w(k, j) = s * wi + c * wj;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vi = v(k, i), vj = v(k, j);
          v(k, i) = c * vi - s * vj;
          v(k, j) = s * vi + c * vj;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += w(k, j) * w(k, j);
    norms[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  out.U = Matrix(m, n);
  out.V = Matrix(n, n);
  out.sigma.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t j = order[c];
    out.sigma[c] = norms[j];
    for (std::size_t k = 0; k < n; ++k) out.V(k, c) = v(k, j);
    if (norms[j] > 0.0)
      for (std::size_t k = 0; k < m; ++k) out.U(k, c) = w(k, j) / norms[j];
  }
  return out;
}

}  // namespace

Svd jacobi_svd(const Matrix& a, double rel_tol, std::size_t max_sweeps) {
  if (!a.all_finite()) throw std::invalid_argument("jacobi_svd: non-finite entry");
  if (a.rows() >= a.cols()) return jacobi_tall(a, rel_tol, max_sweeps);
  Svd t = jacobi_tall(a.transposed(), rel_tol, max_sweeps);
  std::swap(t.U, t.V);
  return t;
}

FiniteSeq singular_values(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return FiniteSeq();
  return FiniteSeq(jacobi_svd(a).sigma);
}

double spectral_norm(const Matrix& a) {
  const FiniteSeq s = singular_values(a);
  return s.empty() ? 0.0 : s[0];
}

}  // namespace scalelab
