#pragma once

#include <cstddef>
#include <vector>

#include "scalelab/finite_seq.hpp"
#include "scalelab/matrix.hpp"

namespace scalelab {

struct Svd {
  Matrix U;                    ///< m x k, orthonormal columns (zero columns for zero sigma)
  std::vector<double> sigma;   ///< k = min(m, n), non-increasing
  Matrix V;                    ///< n x k, orthonormal columns
  std::size_t sweeps = 0;
};

/// One-sided (Hestenes) Jacobi SVD: rotates column pairs of A V until all
/// pairs are orthogonal to rel_tol. Throws on non-finite entries.
Svd jacobi_svd(const Matrix& a, double rel_tol = 1e-15, std::size_t max_sweeps = 80);

/// a_n(T) for n = 1..min(m, n), non-increasing.
FiniteSeq singular_values(const Matrix& a);

/// Largest singular value.
double spectral_norm(const Matrix& a);

}  // namespace scalelab
