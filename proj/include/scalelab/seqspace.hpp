#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "scalelab/finite_seq.hpp"
#include "scalelab/kernels.hpp"
#include "scalelab/space_spec.hpp"
#include "scalelab/verdict.hpp"

namespace scalelab {

/// Decreasing rearrangement a*.
FiniteSeq rearrange(const FiniteSeq& seq);

/// [sum_n n^{rp-1} (a_n*)^p]^{1/p}; for p = inf, sup_n n^r a_n*.
/// Throws std::invalid_argument for p <= 0 or r <= 0.
double lorentz_norm(const FiniteSeq& seq, double p, double r);

/// [sum_n n^{rp-1} (1 + ln n)^{gamma p} (a_n*)^p]^{1/p}, and the sup analogue
/// for p = inf.
double lz_norm(const FiniteSeq& seq, double p, double r, double gamma);

/// Quasi-norm of seq in the space described by spec.
double norm(const FiniteSeq& seq, const SpaceSpec& spec);

/// Summand weight n^{rp-1}(1+ln n)^{gamma p} for finite p, or the sup weight
/// n^r (1+ln n)^gamma for p = inf.
kernels::PowerLogWeight weight_of(const SpaceSpec& spec);

/// Truncated quasi-norms of every prefix of a non-increasing sequence and the
/// resulting membership verdict. Unsorted input is rearranged first.
MembershipVerdict truncated_norms(const FiniteSeq& seq, const SpaceSpec& spec, const VerdictPolicy& policy = {});

/// Solidity: with 0 <= a <= b elementwise, returns norm(a) <= norm(b) up to a
/// relative tolerance. Throws std::invalid_argument on length mismatch or when
/// a is not dominated by b.
bool solidity_check(const FiniteSeq& a, const FiniteSeq& b, const SpaceSpec& spec, double rel_tol = 1e-12);

struct AdmissibilityEstimate {
  double constant = 0.0;               ///< max ratio over the usable samples
  std::vector<double> ratios;          ///< one per sample (NaN if skipped)
  std::vector<std::size_t> skipped;    ///< samples whose subsampled norm is 0
};

/// Empirical C_S for the jump-map condition: max over samples of
/// ||{a_n}|| / ||{a_{K(n)}}|| on truncations. K(n) = 2n by default.
AdmissibilityEstimate admissibility_a3_check(const SpaceSpec& spec, const std::vector<FiniteSeq>& samples,
                                             const std::function<std::size_t(std::size_t)>& jump = {});

/// b_n = a_{max(1, floor(n / C))}, n = 1..floor(C * len). Throws for C <= 0 or
/// unsorted input.
FiniteSeq dilate(const FiniteSeq& seq, double c);

struct DilationBound {
  double lhs = 0.0;       ///< sum n^{rp-1} b_n^p over the dilated sequence
  double rhs = 0.0;       ///< constant * sum m^{rp-1} a_m^p
  double constant = 0.0;  ///< ([C]+1) C^{rp-1} 2^{rp-1} if p >= 1/r, else ([C]+1) C^{rp-1}
  bool holds = false;
};

/// Checks the dilation estimate sum n^{rp-1} (a_{[n/C]})^p <= constant *
/// sum m^{rp-1} a_m^p for finite p.
DilationBound dilation_bound_check(const FiniteSeq& seq, double c, double p, double r);

/// The constant of dilation_bound_check.
double dilation_constant(double c, double p, double r);

/// A modulus kappa with ||a + b|| <= kappa (||a|| + ||b||) on the space,
/// derived from (a+b)*_{2n-1} <= a*_n + b*_n.
double quasi_triangle_modulus(const SpaceSpec& spec);

}  // namespace scalelab
