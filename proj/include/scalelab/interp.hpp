#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "scalelab/piecewise_linear.hpp"
#include "scalelab/verdict.hpp"

namespace scalelab {

enum class BoundType { Exact, Upper, Lower };

const char* to_string(BoundType b) noexcept;

struct KValue {
  double value = 0.0;
  BoundType type = BoundType::Exact;
};

/// Certified lower and upper bounds on K(x, t). lower == upper means exact.
struct KBounds {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  bool exact() const noexcept { return lower == upper; }
};

// ---- (l1^n, linf^n) --------------------------------------------------------

/// K(x, t) = sum_{i <= [t]} x*_i + (t - [t]) x*_{[t]+1}, the integral of the
/// step rearrangement up to t. t = 0 gives 0; throws for t < 0.
double k_l1linf(std::span<const double> x, double t);

// ---- finite-dimensional couples ------------------------------------------

enum class NormKind { L1, L2, Linf };

struct FiniteDimNorm {
  NormKind kind = NormKind::L2;
  double scale = 1.0;
  double operator()(std::span<const double> v) const;
};

/// X = (R^dim, norm_x) and Y = (span of y_basis, norm_y); an empty basis means
/// Y is all of R^dim.
struct FiniteDimCouple {
  std::size_t dim = 2;
  FiniteDimNorm norm_x;
  FiniteDimNorm norm_y;
  std::vector<std::vector<double>> y_basis;

  void validate() const;
};

/// Upper bound from deterministic pattern search over y (with y = 0 and y = x
/// among the starts); lower bound from min(1, t c) ||x||_X, where
/// c = inf ||y||_Y / ||y||_X, and from the X-distance to Y when X is Euclidean.
KBounds k_functional(const FiniteDimCouple& couple, std::span<const double> x, double t);

// ---- C[0,1] and C^1[0,1] ---------------------------------------------------

inline constexpr std::size_t kCC1Grid = 1025;

/// For any g with ||f - g||_inf = d, ||g||_{C^1} >= max(||f||_inf - d,
/// (|f(x_j) - f(x_i)| - 2d) / (x_j - x_i)) over knot pairs. Minimising
/// d + t * that over d gives a lower bound on K(f, t) for every t > 0.
double cc1_lower_bound(const PiecewiseLinear& f, double t);

/// min over the smoothing family g = lambda I_m f (I_m: interpolation on m
/// uniform intervals, m up to grid_points - 1) of ||f - g||_inf + t ||g||_{C^1}.
double cc1_upper_bound(const PiecewiseLinear& f, double t, std::size_t grid_points = kCC1Grid);

KBounds k_functional_cc1(const PiecewiseLinear& f, double t, std::size_t grid_points = kCC1Grid);

/// Largest certified lower bound on ||g||_{C^1} over g with ||f - g||_inf < c:
/// max over knot pairs of (|f(x_j) - f(x_i)| - 2c) / (x_j - x_i), and
/// ||f||_inf - c; never negative.
double cc1_barrier(const PiecewiseLinear& f, double c);

struct CC1Witness {
  double a = 0.0;
  double b = 0.0;
  PiecewiseLinear f;
  std::vector<double> samples;  ///< f on the uniform grid

  /// Dichotomy bound: either ||f - g|| >= 1/2 or t ||g||_{C^1} >= t/(b - a),
  /// so K(f, t) >= min(1/2, t/(b - a)).
  double certificate(double t) const;
  /// max of certificate(t) and cc1_lower_bound(f, t).
  double certified_lower(double t) const;
};

/// Ramp with f = -1 left of a and f = 1 right of b. Throws unless 0 < a < b < 1.
CC1Witness cc1_witness(double a, double b, std::size_t grid_points = kCC1Grid);

// ---- K profiles --------------------------------------------------------------

struct KProfile {
  std::vector<double> ts;
  std::vector<double> values;
  std::vector<BoundType> types;
};

KProfile k_profile(const std::function<KValue(double)>& k, const std::vector<double>& ts);

struct KProfileCheck {
  bool monotone = true;        ///< K non-decreasing in t
  bool ratio_monotone = true;  ///< K(t)/t non-increasing in t
  double worst_monotone = 0.0;
  double worst_ratio = 0.0;
  std::size_t exact_points = 0;
};

/// Checks both monotonicity laws on consecutive exact entries, with relative
/// tolerance tol. ts may be in either order.
KProfileCheck check_k_profile(const KProfile& profile, double tol = 1e-10);

/// Dyadic grid 2^{-k}, k = 0..k_max.
std::vector<double> dyadic_grid(std::size_t k_max);

// ---- discrete and continuous real-interpolation norms ------------------------

/// Truncated l_q norm of {2^{k theta} K(2^{-k})}_{k=0}^{k_max} with a verdict.
MembershipVerdict rho_norm(const std::function<double(double)>& K, double theta, double q, std::size_t k_max,
                           const VerdictPolicy& policy = {});

struct RhoCrossCheck {
  double discrete = 0.0;
  double continuous = 0.0;
  double lo = 0.0;  ///< allowed continuous/discrete range
  double hi = 0.0;
  bool holds = false;
};

/// Quadrature of ||t^{-theta-1/q} K(t)||_{L^q} over [2^{-k_max-1}, 1] against
/// the truncated discrete norm. Block by block the ratio lies in
/// [C^{1/q}/2, C^{1/q}] with C = (2^{theta q} - 1)/(theta q) (for q = inf,
/// in [1, 2^theta]), using K(t/2) >= K(t)/2.
RhoCrossCheck rho_continuous_check(const std::function<double(double)>& K, double theta, double q,
                                   std::size_t k_max);

// ---- condition (a), (K2), A({b_n},{t_n}) ---------------------------------

struct ConditionAPoint {
  double t = 0.0;
  KBounds bounds;  ///< bounds on sup_{||x||=1} K(x, t) from the supplied witness
};

struct ConditionAReport {
  double c = 0.0;
  std::vector<ConditionAPoint> points;
  std::vector<double> failures;  ///< ts whose certified lower bound is below c
  double min_lower = 0.0;
  bool holds = false;
};

/// Condition (a) holds on the grid iff every certified lower bound is >= c.
/// Upper bounds are reported but never certify.
ConditionAReport condition_a_scan(const std::function<KBounds(double)>& witness_bounds, const std::vector<double>& ts,
                                  double c);

/// SampledCC1 witness family: for each t the centred ramp of width min(t, 1/2).
std::function<KBounds(double)> cc1_condition_a_family(std::size_t grid_points = kCC1Grid);

struct K2Report {
  double gamma = 0.0;
  double argmax_t = 0.0;
  std::vector<double> ts;
  std::vector<double> ratios;  ///< int_0^t K / K(t)
  bool stable = true;          ///< every integral met the refinement tolerance
};

/// max over ts of int_0^t K(s) ds / K(t), composite trapezoid refined until
/// consecutive estimates agree to rel_tol. K(0) must be the limit value.
/// Throws if K(t) = 0 on the grid.
K2Report k2_check(const std::function<double(double)>& K, const std::vector<double>& ts, double rel_tol = 1e-4);

/// Truncated sup_n b_n K(t_n). Throws unless t strictly decreases and the
/// lengths match.
MembershipVerdict abn_norm(const std::function<double(double)>& K, const std::vector<double>& b,
                           const std::vector<double>& t, const VerdictPolicy& policy = {});

struct AbnChainPoint {
  std::size_t n = 0;
  double t = 0.0;
  double b = 0.0;
  double k_lower = 0.0;     ///< certified K(x_n, t_n)
  double norm_lower = 0.0;  ///< b_n K(x_n, t_n) <= ||x_n||_A
};

/// Witness chain: unit x_n with certified K(x_n, t_n) >= k_lower(t_n) gives
/// A-norms at least b_n k_lower(t_n).
std::vector<AbnChainPoint> abn_witness_chain(const std::function<double(double)>& certified_k, const std::vector<double>& b,
                                             const std::vector<double>& t);

// ---- Barrier family --------------------------------------------------------

struct PropositionPoint {
  std::size_t n = 0;
  double eps = 0.0;      ///< 1/n
  double t = 0.0;        ///< 1/phi(1/n)
  double phi = 0.0;
  double barrier = 0.0;  ///< certified ||y||_Y lower bound when ||z_n - y|| < c
  double bound = 0.0;    ///< min(c, t barrier) <= K(z_n, t_n)
  bool unit = false;     ///< ||z_n||_X = 1
  bool passes = false;
};

struct PropositionReport {
  double c = 0.0;
  std::vector<PropositionPoint> points;
  std::vector<std::size_t> failures;
  bool holds = false;
};

/// t_n = 1/phi(1/n), z_n = family(1/n); passes iff z_n is unit, its barrier is
/// at least phi(1/n) and hence K(z_n, t_n) >= c.
PropositionReport proposition_witness(const std::function<double(double)>& phi,
                                      const std::function<PiecewiseLinear(double)>& family, double c,
                                      std::size_t n_lo, std::size_t n_hi);

/// Centred ramp of width w (needs 0 < w < 1).
PiecewiseLinear centred_ramp(double w);

// ---- (K1) verifier ------------------------------------------------------------

struct Equivalence {
  double lo = 0.0;  ///< min K/phi
  double hi = 0.0;  ///< max K/phi
};

/// Equivalence constants of K against a target concave phi on a grid.
Equivalence k1_equivalence(const std::function<double(double)>& K, const std::function<double(double)>& phi,
                           const std::vector<double>& ts);

}  // namespace scalelab
