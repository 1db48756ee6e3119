#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "scalelab/ratio_profile.hpp"
#include "scalelab/scales.hpp"
#include "scalelab/schemes.hpp"
#include "scalelab/seqspace.hpp"

namespace scalelab {

/// Norm of an error sequence (E(x,A_0), E(x,A_1), ...) in spec; E(x,A_{n-1})
/// plays the role of a_n.
MembershipVerdict approx_norm(const FiniteSeq& errors, const SpaceSpec& spec, const VerdictPolicy& policy = {});
MembershipVerdict approx_norm(const std::vector<double>& x, const HilbertScheme& scheme, const SpaceSpec& spec,
                              std::size_t N, const VerdictPolicy& policy = {});
MembershipVerdict approx_norm(const MatrixScheme& scheme, const SpaceSpec& spec, std::size_t N,
                              const VerdictPolicy& policy = {});
MembershipVerdict approx_norm(const DiagonalScheme& scheme, const SpaceSpec& spec, std::size_t N,
                              const VerdictPolicy& policy = {});

struct Separation {
  RatioProfile profile;
  PowerLogFamily witness;          ///< error profile eps_n = (n+1)^{-beta}(1+ln(n+1))^{-delta}
  MembershipVerdict numerator;     ///< at the largest N
  MembershipVerdict denominator;   ///< at the largest N
  /// Numerator diverging and denominator converged at the largest N: the
  /// witness separates the two approximation spaces, whatever the ratio
  /// threshold says.
  bool membership_separated = false;
};

/// Separation for a linear (Hilbert) scheme with s2 strictly inside s1:
/// eps in s1 \ s2, y_N realises (eps_0, ..., eps_{N-1}) exactly, and the
/// profile is ||y_N||_{A(s2)} / ||y_N||_{A(s1)}. Equal specs give ratio 1.
/// Throws std::invalid_argument for non-nested specs.
Separation separate_linear(const HilbertScheme& scheme, const SpaceSpec& s1, const SpaceSpec& s2,
                           const std::vector<std::size_t>& Ns, const VerdictPolicy& policy = {},
                           const ProfilePolicy& profile_policy = {});

struct Teo2Point {
  std::size_t N = 0;
  double norm_s1 = 0.0;
  double norm_s2 = 0.0;
  double lower_s1 = 0.0;   ///< c * ||1_N||_{s1}
  double upper_s2 = 0.0;   ///< ||1_N||_{s2}
  double closed_form = 0.0;  ///< c * ||1_N||_{s1} / ||1_N||_{s2}
  bool inequality_holds = false;
};

struct Teo2Report {
  RatioProfile profile;        ///< ||a_N||_{A(s1)} / ||a_N||_{A(s2)}
  RatioProfile ones_profile;   ///< ||1_N||_{s1} / ||1_N||_{s2}
  double gap = 0.0;            ///< c, the minimum Shapiro gap over the tested range
  std::vector<Teo2Point> points;
  bool preconditions_ok = false;
  std::vector<std::string> precondition_failures;
};

/// Hilbert realisation with a_N = e_{N-1}: E(a_N, A_k) = 1 for k < N and 0 after.
Teo2Report separate_teo2(const HilbertScheme& scheme, const SpaceSpec& s1, const SpaceSpec& s2,
                         const std::vector<std::size_t>& Ns, const ProfilePolicy& profile_policy = {});

struct CorbrudReport {
  double r = 0.0, p = 0.0, q = 0.0;
  std::size_t N = 0;
  PowerLogFamily family;          ///< eps_n = (n+1)^{-r}(1+ln(n+1))^{-1/p}
  double max_roundtrip_error = 0.0;
  bool convex = false;
  DoublingEstimate doubling;
  double doubling_bound = 0.0;    ///< 2^r 2^{1/p}
  MembershipVerdict in_q;         ///< A_q^r
  MembershipVerdict in_p;         ///< A_p^r
  bool separated() const noexcept { return in_q.converged() && in_p.diverging(); }
};

/// Builds x with E(x,A_n) = eps_n exactly for n <= N and reports convexity,
/// doubling and both membership verdicts. Needs 0 < p < q and r > 0.
CorbrudReport corbrud_separation(const HilbertScheme& scheme, double r, double p, double q, std::size_t N,
                                 const VerdictPolicy& policy = {});

struct SandwichPoint {
  std::size_t n = 0;
  double a_n = 0.0;
  double upper = 0.0;   ///< 3 eps_{[n/6]}
  double lower = 0.0;   ///< eps_n / 9
};

struct SandwichReport {
  std::vector<SandwichPoint> points;
  double min_upper_margin = 0.0;
  double min_lower_margin = 0.0;
  std::vector<std::size_t> upper_failures;
  std::vector<std::size_t> lower_failures;
  bool holds = false;
};

/// Checks 3 eps_{[n/6]} >= a_n(T) >= eps_n / 9 for n = 1..min(len(eps)-1, dim T),
/// with eps = (eps_0, eps_1, ...) and a_n(T) the sorted diagonal.
SandwichReport oikhberg_sandwich_check(const FiniteSeq& eps, const DiagonalScheme& T);

/// T = diag(eps_1, ..., eps_L), the canonical diagonal construction.
DiagonalScheme canonical_diagonal(const FiniteSeq& eps);

}  // namespace scalelab
