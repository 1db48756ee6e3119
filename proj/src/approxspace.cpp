#include "scalelab/approxspace.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <stdexcept>

namespace scalelab {

MembershipVerdict approx_norm(const FiniteSeq& errors, const SpaceSpec& spec, const VerdictPolicy& policy) {
  return truncated_norms(errors, spec, policy);
}

MembershipVerdict approx_norm(const std::vector<double>& x, const HilbertScheme& scheme, const SpaceSpec& spec,
                              std::size_t N, const VerdictPolicy& policy) {
  return truncated_norms(error_sequence(x, scheme, N), spec, policy);
}

MembershipVerdict approx_norm(const MatrixScheme& scheme, const SpaceSpec& spec, std::size_t N,
                              const VerdictPolicy& policy) {
  return truncated_norms(error_sequence(scheme, N), spec, policy);
}

MembershipVerdict approx_norm(const DiagonalScheme& scheme, const SpaceSpec& spec, std::size_t N,
                              const VerdictPolicy& policy) {
  return truncated_norms(error_sequence(scheme, N), spec, policy);
}

Separation separate_linear(const HilbertScheme& scheme, const SpaceSpec& s1, const SpaceSpec& s2,
                           const std::vector<std::size_t>& Ns, const VerdictPolicy& policy,
                           const ProfilePolicy& profile_policy) {
  s1.validate();
  s2.validate();
  if (Ns.empty()) throw std::invalid_argument("separate_linear: empty N grid");
  if (!std::is_sorted(Ns.begin(), Ns.end()) || Ns.front() == 0) {
    throw std::invalid_argument("separate_linear: N grid must be increasing and positive");
  }
  if (Ns.back() > scheme.n_max) throw std::invalid_argument("separate_linear: N above the scheme budget");

  Separation sep;
  sep.profile.Ns = Ns;
  const bool same = s1 == s2;
  if (same) {
    sep.witness = {s1.r + 1.0, 0.0, 1.0};
  } else {
    const auto w = find_witness(s2, s1);
    if (!w) {
      throw std::invalid_argument(
          fmt::format("separate_linear: {} is not strictly inside {}", s2.to_string(), s1.to_string()));
    }
    sep.witness = *w;
    sep.witness.offset = 1.0;
    const bool same_r = s1.r == s2.r;
    sep.profile.predicted_rate = same_r ? std::numeric_limits<double>::quiet_NaN() : s2.r - sep.witness.beta;
  }

  const FiniteSeq eps = sep.witness.sequence(Ns.back(), 0);
  for (auto N : Ns) {
    // y_N realises the first N prescribed errors and nothing after.
    const std::vector<double> yN = prescribe_errors(eps.prefix(N), scheme);
    const FiniteSeq errs = error_sequence(yN, scheme, N);
    const double den = norm(errs, s1);
    const double num = norm(errs, s2);
    sep.profile.ratios.push_back(den > 0.0 ? num / den : std::numeric_limits<double>::quiet_NaN());
  }
  classify_profile(sep.profile, profile_policy);

  const FiniteSeq full = error_sequence(prescribe_errors(eps, scheme), scheme, Ns.back());
  sep.numerator = approx_norm(full, s2, policy);
  sep.denominator = approx_norm(full, s1, policy);
  sep.membership_separated = !same && sep.numerator.diverging() && sep.denominator.converged();
  return sep;
}

Teo2Report separate_teo2(const HilbertScheme& scheme, const SpaceSpec& s1, const SpaceSpec& s2,
                         const std::vector<std::size_t>& Ns, const ProfilePolicy& profile_policy) {
  s1.validate();
  s2.validate();
  if (Ns.empty() || Ns.front() == 0) throw std::invalid_argument("separate_teo2: N grid must be positive");
  if (Ns.back() > scheme.n_max) throw std::invalid_argument("separate_teo2: N above the scheme budget");

  Teo2Report rep;
  rep.gap = 1.0;
  for (std::size_t n = 0; n < Ns.back(); ++n) rep.gap = std::min(rep.gap, shapiro_gap(scheme, n).value);
  if (!(rep.gap > 0.0)) rep.precondition_failures.push_back("Shapiro gap is not bounded away from 0");

  rep.ones_profile = ones_ratio_profile(s1, s2, Ns, profile_policy);
  if (rep.ones_profile.verdict != ProfileVerdict::Diverges) {
    rep.precondition_failures.push_back(
        fmt::format("ones ratio {} / {} is {}, not divergent", s1.to_string(), s2.to_string(),
                    to_string(rep.ones_profile.verdict)));
  }
  rep.preconditions_ok = rep.precondition_failures.empty();

  rep.profile.Ns = Ns;
  rep.profile.predicted_rate = s1.r - s2.r;
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    const std::size_t N = Ns[i];
    std::vector<double> a(N, 0.0);
    a[N - 1] = 1.0;  // e_{N-1}
    const FiniteSeq errs = error_sequence(a, scheme, N);
    Teo2Point pt;
    pt.N = N;
    pt.norm_s1 = norm(errs, s1);
    pt.norm_s2 = norm(errs, s2);
    const double o1 = ones_norm(s1, N);
    const double o2 = ones_norm(s2, N);
    pt.lower_s1 = rep.gap * o1;
    pt.upper_s2 = o2;
    pt.closed_form = rep.gap * o1 / o2;
    const double tol = 1e-12;
    pt.inequality_holds = pt.norm_s1 >= pt.lower_s1 * (1.0 - tol) && pt.norm_s2 <= pt.upper_s2 * (1.0 + tol);
    rep.points.push_back(pt);
    rep.profile.ratios.push_back(pt.norm_s1 / pt.norm_s2);
  }
  classify_profile(rep.profile, profile_policy);
  return rep;
}

CorbrudReport corbrud_separation(const HilbertScheme& scheme, double r, double p, double q, std::size_t N,
                                 const VerdictPolicy& policy) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("corbrud_separation: r must be positive");
  if (!(p > 0.0) || !(p < q) || !std::isfinite(p)) throw std::invalid_argument("corbrud_separation: needs 0 < p < q");
  if (N < 2) throw std::invalid_argument("corbrud_separation: N must be >= 2");
  CorbrudReport rep;
  rep.r = r;
  rep.p = p;
  rep.q = q;
  rep.N = N;
  rep.family = {r, 1.0 / p, 1.0};
  const FiniteSeq eps = rep.family.sequence(N + 1, 0);
  const std::vector<double> x = prescribe_errors(eps, scheme);
  const FiniteSeq errs = error_sequence(x, scheme, N);
  for (std::size_t n = 0; n <= N; ++n) {
    rep.max_roundtrip_error = std::max(rep.max_roundtrip_error, std::abs(errs[n] - eps[n]));
  }
  rep.convex = convexity_check(errs);
  rep.doubling = doubling_check([&errs](double n) { return std::log(errs[static_cast<std::size_t>(n)]); }, N / 2);
  rep.doubling_bound = std::pow(2.0, r) * std::pow(2.0, 1.0 / p);
  rep.in_q = approx_norm(errs, SpaceSpec::lorentz(q, r), policy);
  rep.in_p = approx_norm(errs, SpaceSpec::lorentz(p, r), policy);
  return rep;
}

DiagonalScheme canonical_diagonal(const FiniteSeq& eps) {
  if (eps.size() < 2) return {FiniteSeq()};
  std::vector<double> d(eps.values().begin() + 1, eps.values().end());
  return {FiniteSeq(std::move(d))};
}

SandwichReport oikhberg_sandwich_check(const FiniteSeq& eps, const DiagonalScheme& T) {
  if (!eps.is_non_increasing()) throw std::invalid_argument("oikhberg_sandwich_check: eps must be non-increasing");
  SandwichReport rep;
  const std::size_t L = eps.size() < 2 ? 0 : std::min(eps.size() - 1, T.d.size());
  const FiniteSeq a = rearrange(T.d);
  rep.min_upper_margin = kInf;
  rep.min_lower_margin = kInf;
  for (std::size_t n = 1; n <= L; ++n) {
    SandwichPoint pt{n, a[n - 1], 3.0 * eps[n / 6], eps[n] / 9.0};
    const double up = pt.upper - pt.a_n;
    const double lo = pt.a_n - pt.lower;
    rep.min_upper_margin = std::min(rep.min_upper_margin, up);
    rep.min_lower_margin = std::min(rep.min_lower_margin, lo);
    if (up < 0.0) rep.upper_failures.push_back(n);
    if (lo < 0.0) rep.lower_failures.push_back(n);
    rep.points.push_back(pt);
  }
  if (L == 0) rep.min_upper_margin = rep.min_lower_margin = 0.0;
  rep.holds = rep.upper_failures.empty() && rep.lower_failures.empty();
  return rep;
}

}  // namespace scalelab
