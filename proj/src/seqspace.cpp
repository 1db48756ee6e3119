#include "scalelab/seqspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "scalelab/kernels.hpp"

namespace scalelab {

namespace {

void check_params(double p, double r) {
  if (!(p > 0.0)) throw std::invalid_argument("norm: p must be positive (or inf)");
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("norm: r must be positive");
}

double finite_norm(std::span<const double> sorted, double p, kernels::PowerLogWeight w) {
  const double s = kernels::weighted_power_sum(sorted, w, p);
  return p == 1.0 ? s : std::pow(s, 1.0 / p);
}

double sup_norm(std::span<const double> sorted, kernels::PowerLogWeight w) {
  if (sorted.empty()) return 0.0;
  std::vector<double> running(sorted.size());
  kernels::weighted_sup_prefix(sorted, w, running);
  return running.back();
}

}  // namespace

FiniteSeq rearrange(const FiniteSeq& seq) {
  if (seq.is_non_increasing()) return seq;
  std::vector<double> v = seq.vector();
  std::sort(v.begin(), v.end(), std::greater<>{});
  return FiniteSeq(std::move(v));
}

kernels::PowerLogWeight weight_of(const SpaceSpec& spec) {
  if (spec.p_infinite()) return {spec.r, spec.gamma};
  return {spec.r * spec.p - 1.0, spec.gamma * spec.p};
}

double lorentz_norm(const FiniteSeq& seq, double p, double r) { return lz_norm(seq, p, r, 0.0); }

double lz_norm(const FiniteSeq& seq, double p, double r, double gamma) {
  check_params(p, r);
  if (!(gamma >= 0.0)) throw std::invalid_argument("norm: gamma must be >= 0");
  const FiniteSeq sorted = rearrange(seq);
  if (p == kInf) return sup_norm(sorted.values(), {r, gamma});
  return finite_norm(sorted.values(), p, {r * p - 1.0, gamma * p});
}

double norm(const FiniteSeq& seq, const SpaceSpec& spec) {
  spec.validate();
  return lz_norm(seq, spec.p, spec.r, spec.gamma);
}

MembershipVerdict truncated_norms(const FiniteSeq& seq, const SpaceSpec& spec, const VerdictPolicy& policy) {
  spec.validate();
  const FiniteSeq sorted = rearrange(seq);
  const auto v = sorted.values();
  const auto w = weight_of(spec);
  const auto scale = sequence_log_scale(v.size());
  std::vector<double> prefix(v.size());
  if (spec.p_infinite()) {
    kernels::weighted_sup_prefix(v, w, prefix);
    return classify_sup(prefix, scale, policy);
  }
  kernels::weighted_power_prefix(v, w, spec.p, prefix);
  return classify_sum(prefix, scale, spec.p, policy);
}

bool solidity_check(const FiniteSeq& a, const FiniteSeq& b, const SpaceSpec& spec, double rel_tol) {
  if (a.size() != b.size()) throw std::invalid_argument("solidity_check: length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) throw std::invalid_argument("solidity_check: a is not dominated by b");
  }
  const double na = norm(a, spec);
  const double nb = norm(b, spec);
  return na <= nb * (1.0 + rel_tol);
}

AdmissibilityEstimate admissibility_a3_check(const SpaceSpec& spec, const std::vector<FiniteSeq>& samples,
                                             const std::function<std::size_t(std::size_t)>& jump) {
  const auto k_map = jump ? jump : [](std::size_t n) { return 2 * n; };
  AdmissibilityEstimate est;
  est.ratios.assign(samples.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& a = samples[s];
    if (!a.is_non_increasing()) throw std::invalid_argument("admissibility_a3_check: samples must be non-increasing");
    std::vector<double> sub;
    for (std::size_t n = 1;; ++n) {
      const std::size_t k = k_map(n);
      if (k < n) throw std::invalid_argument("admissibility_a3_check: jump map must satisfy K(n) >= n");
      if (k > a.size()) break;
      sub.push_back(a[k - 1]);
    }
    const double denom = norm(FiniteSeq(std::move(sub)), spec);
    if (denom == 0.0) {
      est.skipped.push_back(s);
      continue;
    }
    est.ratios[s] = norm(a, spec) / denom;
    est.constant = std::max(est.constant, est.ratios[s]);
  }
  return est;
}

FiniteSeq dilate(const FiniteSeq& seq, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("dilate: C must be positive");
  if (!seq.is_non_increasing()) throw std::invalid_argument("dilate: sequence must be non-increasing");
  const auto len = static_cast<std::size_t>(std::floor(c * static_cast<double>(seq.size()) + 1e-9));
  std::vector<double> out(len);
  for (std::size_t n = 1; n <= len; ++n) {
    auto idx = static_cast<std::size_t>(std::floor(static_cast<double>(n) / c + 1e-12));
    idx = std::clamp<std::size_t>(idx, 1, seq.size());
    out[n - 1] = seq[idx - 1];
  }
  return FiniteSeq(std::move(out));
}

double dilation_constant(double c, double p, double r) {
  const double s = r * p - 1.0;
  const double base = (std::floor(c) + 1.0) * std::pow(c, s);
  return p >= 1.0 / r ? base * std::pow(2.0, s) : base;
}

DilationBound dilation_bound_check(const FiniteSeq& seq, double c, double p, double r) {
  check_params(p, r);
  if (p == kInf) throw std::invalid_argument("dilation_bound_check: finite p required");
  const FiniteSeq b = dilate(seq, c);
  const kernels::PowerLogWeight w{r * p - 1.0, 0.0};
  DilationBound out;
  out.constant = dilation_constant(c, p, r);
  out.lhs = kernels::weighted_power_sum(b.values(), w, p);
  out.rhs = out.constant * kernels::weighted_power_sum(seq.values(), w, p);
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-12);
  return out;
}

double quasi_triangle_modulus(const SpaceSpec& spec) {
  spec.validate();
  const double log_factor = 1.0 + std::log(2.0);
  if (spec.p_infinite()) return std::pow(2.0, spec.r) * std::pow(log_factor, spec.gamma);
  const double rp = spec.r * spec.p;
  double k = rp >= 1.0 ? std::pow(2.0, rp) : 1.0 + std::pow(2.0, rp - 1.0);
  k *= std::pow(log_factor, spec.gamma * spec.p);
  return std::pow(k, 1.0 / spec.p) * std::max(1.0, std::pow(2.0, 1.0 / spec.p - 1.0));
}

}  // namespace scalelab
