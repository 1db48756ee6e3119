#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "scalelab/finite_seq.hpp"
#include "scalelab/matrix.hpp"

namespace scalelab {

inline constexpr std::size_t kHilbertCap = std::size_t{1} << 16;
inline constexpr std::size_t kMatrixCap = 64;

/// A_n = span of the first n coordinates of an orthonormal system, A_0 = {0}.
/// Elements are coordinate vectors; coordinates past the vector are zero.
struct HilbertScheme {
  std::size_t n_max = kHilbertCap;
};

/// Approximation of a square matrix by matrices of rank < n in spectral norm.
struct MatrixScheme {
  Matrix T;
  std::size_t m_max = kMatrixCap;

  /// Throws unless T is square, finite and within the size cap.
  void validate() const;
};

/// Diagonal operator on Hilbert sequence space.
struct DiagonalScheme {
  FiniteSeq d;
};

/// Coordinates x with E(x, A_k) = eps_k for k = 0..N, where eps = (eps_0..eps_N)
/// and eps_{N+1} := 0: x_k = sqrt(eps_k^2 - eps_{k+1}^2). A final zero in eps
/// yields no coordinate. Throws if eps increases or N exceeds the budget.
std::vector<double> prescribe_errors(const FiniteSeq& eps, const HilbertScheme& scheme = {});

/// (E(x, A_0), ..., E(x, A_N)), the tail norms of x.
FiniteSeq error_sequence(const std::vector<double>& x, const HilbertScheme& scheme, std::size_t N);

/// (a_1(T), ..., a_{N+1}(T)), singular values padded with zeros.
FiniteSeq error_sequence(const MatrixScheme& scheme, std::size_t N);

/// Sorted diagonal entries padded with zeros to length N+1.
FiniteSeq error_sequence(const DiagonalScheme& scheme, std::size_t N);

struct GapBound {
  double value = 0.0;       ///< certified lower bound on E(S(X) cap A_{n+1}, A_n)
  std::string witness;
};

/// Hilbert: e_n has unit norm, lies in A_{n+1} and is orthogonal to A_n.
GapBound shapiro_gap(const HilbertScheme& scheme, std::size_t n);

/// Diagonal scheme of dimension m: the coordinate projection of rank n+1 is a
/// unit-norm witness with a_{n+1} = 1 (available for n < m).
GapBound shapiro_gap(const DiagonalScheme& scheme, std::size_t n);

/// A candidate of rank <= n+1 normalised to unit spectral norm certifies
/// sigma_{n+1}(M) / ||M||. Throws if the numeric rank exceeds n+1.
GapBound shapiro_gap(const Matrix& candidate, std::size_t n);

struct ProjectionCase {
  std::size_t n = 0;  ///< required rank
  Matrix P;
};

struct ProjectionGap {
  std::size_t n = 0;
  double norm = 0.0;            ///< ||P_n||
  double a_n = 0.0;             ///< a_n(P_n / ||P_n||)
  double bound = 0.0;           ///< 1 / C^2
  double margin = 0.0;          ///< a_n - bound
  double idempotence = 0.0;     ///< ||P^2 - P||
  bool holds = false;
};

/// Checks a_n(P_n/||P_n||) >= 1/C^2 for each projection. Throws
/// std::invalid_argument if a case is not idempotent to 1e-8, has the wrong
/// rank, or has norm above C.
std::vector<ProjectionGap> projection_gap_check(const std::vector<ProjectionCase>& family, double C);

/// P = U [[I_n, K], [0, 0]] U^T with random orthogonal U and ||K|| <= sqrt(C^2 - 1),
/// so P is a rank-n projection with ||P|| <= C.
Matrix random_oblique_projection(std::size_t m, std::size_t n, double C, std::uint64_t seed);

}  // namespace scalelab
