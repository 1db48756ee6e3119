#include "scalelab/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <random>
#include <stdexcept>

#include "scalelab/seqspace.hpp"
#include "scalelab/svd.hpp"

namespace scalelab {

namespace {

FiniteSeq padded(std::vector<double> v, std::size_t len) {
  v.resize(len, 0.0);
  return FiniteSeq(std::move(v));
}

std::size_t numeric_rank(const FiniteSeq& sigma, double rel_tol = 1e-10) {
  if (sigma.empty() || sigma[0] == 0.0) return 0;
  std::size_t r = 0;
  while (r < sigma.size() && sigma[r] > rel_tol * sigma[0]) ++r;
  return r;
}

}  // namespace

void MatrixScheme::validate() const {
  if (T.rows() != T.cols()) throw std::invalid_argument("MatrixScheme: matrix must be square");
  if (T.rows() > m_max) throw std::invalid_argument(fmt::format("MatrixScheme: size {} above cap {}", T.rows(), m_max));
  if (!T.all_finite()) throw std::invalid_argument("MatrixScheme: non-finite entry");
}

std::vector<double> prescribe_errors(const FiniteSeq& eps, const HilbertScheme& scheme) {
  if (eps.empty()) return {};
  if (!eps.is_non_increasing()) throw std::invalid_argument("prescribe_errors: eps must be non-increasing");
  if (eps.size() - 1 > scheme.n_max) throw std::invalid_argument("prescribe_errors: N above the scheme budget");
  const std::size_t len = eps[eps.size() - 1] == 0.0 ? eps.size() - 1 : eps.size();
  std::vector<double> x(len);
  for (std::size_t k = 0; k < len; ++k) {
    const double a = eps[k];
    const double b = k + 1 < eps.size() ? eps[k + 1] : 0.0;
    x[k] = std::sqrt((a - b) * (a + b));
  }
  return x;
}

FiniteSeq error_sequence(const std::vector<double>& x, const HilbertScheme& scheme, std::size_t N) {
  if (N > scheme.n_max) throw std::invalid_argument("error_sequence: N above the scheme budget");
  std::vector<double> out(N + 1, 0.0);
  // Tail sums from the end; coordinates past N only add to E(x, A_N).
  double tail = 0.0;
  for (std::size_t k = x.size(); k-- > 0;) {
    tail += x[k] * x[k];
    if (k <= N) out[k] = std::sqrt(tail);
  }
  return FiniteSeq(std::move(out));
}

FiniteSeq error_sequence(const MatrixScheme& scheme, std::size_t N) {
  scheme.validate();
  return padded(singular_values(scheme.T).vector(), N + 1);
}

FiniteSeq error_sequence(const DiagonalScheme& scheme, std::size_t N) {
  return padded(rearrange(scheme.d).vector(), N + 1);
}

GapBound shapiro_gap(const HilbertScheme& scheme, std::size_t n) {
  if (n >= scheme.n_max) return {0.0, "n beyond budget"};
  return {1.0, fmt::format("e_{}", n)};
}

GapBound shapiro_gap(const DiagonalScheme& scheme, std::size_t n) {
  const std::size_t m = scheme.d.size();
  if (n >= m) return {0.0, "n beyond dimension"};
  std::vector<double> diag(m, 0.0);
  std::fill(diag.begin(), diag.begin() + static_cast<std::ptrdiff_t>(n + 1), 1.0);
  GapBound g = shapiro_gap(Matrix::diagonal(diag), n);
  g.witness = fmt::format("coordinate projection of rank {}", n + 1);
  return g;
}

GapBound shapiro_gap(const Matrix& candidate, std::size_t n) {
  const FiniteSeq s = singular_values(candidate);
  if (s.empty() || s[0] == 0.0) return {0.0, "zero candidate"};
  if (numeric_rank(s) > n + 1) throw std::invalid_argument("shapiro_gap: candidate rank exceeds n+1");
  const double v = n < s.size() ? s[n] / s[0] : 0.0;
  return {v, fmt::format("normalised candidate of rank {}", numeric_rank(s))};
}

std::vector<ProjectionGap> projection_gap_check(const std::vector<ProjectionCase>& family, double C) {
  if (!(C >= 1.0)) throw std::invalid_argument("projection_gap_check: C must be >= 1");
  std::vector<ProjectionGap> out;
  out.reserve(family.size());
  for (const auto& pc : family) {
    const Matrix& P = pc.P;
    if (P.rows() != P.cols()) throw std::invalid_argument("projection_gap_check: P must be square");
    ProjectionGap g;
    g.n = pc.n;
    g.idempotence = spectral_norm(P * P - P);
    if (g.idempotence > 1e-8) {
      throw std::invalid_argument(
          fmt::format("projection_gap_check: P_{} not idempotent, ||P^2 - P|| = {:.3e}", pc.n, g.idempotence));
    }
    const FiniteSeq s = singular_values(P);
    const std::size_t rank = numeric_rank(s, 1e-8);
    if (rank != pc.n) {
      throw std::invalid_argument(fmt::format("projection_gap_check: P_{} has numeric rank {}", pc.n, rank));
    }
    g.norm = s[0];
    if (g.norm > C * (1.0 + 1e-12)) {
      throw std::invalid_argument(fmt::format("projection_gap_check: ||P_{}|| = {} exceeds C = {}", pc.n, g.norm, C));
    }
    g.a_n = pc.n == 0 ? 0.0 : s[pc.n - 1] / g.norm;
    g.bound = 1.0 / (C * C);
    g.margin = g.a_n - g.bound;
    g.holds = g.margin >= -1e-12;
    out.push_back(g);
  }
  return out;
}

Matrix random_oblique_projection(std::size_t m, std::size_t n, double C, std::uint64_t seed) {
  if (n == 0 || n > m) throw std::invalid_argument("random_oblique_projection: need 1 <= n <= m");
  if (!(C >= 1.0)) throw std::invalid_argument("random_oblique_projection: C must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix core(m, m);
  for (std::size_t i = 0; i < n; ++i) core(i, i) = 1.0;
  if (n < m) {
    Matrix K(n, m - n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m - n; ++j) K(i, j) = g(rng);
    const double kn = spectral_norm(K);
    const double target = u(rng) * std::sqrt(C * C - 1.0);
    const double scale = kn > 0.0 ? target / kn : 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m - n; ++j) core(i, n + j) = scale * K(i, j);
  }
  const Matrix U = random_orthogonal(m, rng());
  return U * core * U.transposed();
}

}  // namespace scalelab
