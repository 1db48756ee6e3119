#include "scalelab/scales.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <stdexcept>
#include <vector>

#include "scalelab/kernels.hpp"
#include "scalelab/seqspace.hpp"

namespace scalelab {

namespace {

constexpr double kExpTol = 1e-12;

double inv(double p) { return p == kInf ? 0.0 : 1.0 / p; }

bool positive(double x) { return x > 0.0; }

constexpr std::size_t kDirectTerms = std::size_t{1} << 20;

/// int_lo^hi x^a (1 + ln x)^b dx, by 5-point Gauss-Legendre in u = ln x on
/// panels short enough that the integrand changes by at most e^{1/4}.
double weight_integral(const kernels::PowerLogWeight& w, double lo, double hi) {
  static constexpr double node[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                                     0.9061798459386640};
  static constexpr double weight[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                       0.2369268850561891, 0.2369268850561891};
  const double a1 = w.power + 1.0;
  const double u0 = std::log(lo), u1 = std::log(hi);
  const double rate = std::max(std::abs(a1), std::abs(w.log_power) / (1.0 + u0));
  const auto panels = static_cast<std::size_t>(std::ceil((u1 - u0) * std::max(rate, 1.0) / 0.25));
  const double h = (u1 - u0) / static_cast<double>(panels);
  double total = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    const double mid = u0 + (static_cast<double>(k) + 0.5) * h;
    double panel = 0.0;
    for (int j = 0; j < 5; ++j) {
      const double u = mid + 0.5 * h * node[j];
      panel += weight[j] * std::exp(a1 * u) * std::pow(1.0 + u, w.log_power);
    }
    total += 0.5 * h * panel;
  }
  return total;
}

/// sum_{n=1}^N w_n: direct up to 2^20 terms, Euler-Maclaurin beyond.
/// head, when given, is sum_{n=1}^{2^20 - 1} w_n.
double long_weight_sum(const kernels::PowerLogWeight& w, std::size_t N, const double* head = nullptr) {
  if (N <= kDirectTerms) return kernels::weight_sum(w, 1, N);
  const double m = static_cast<double>(kDirectTerms), n = static_cast<double>(N);
  auto f = [&](double x) { return std::pow(x, w.power) * std::pow(1.0 + std::log(x), w.log_power); };
  auto df = [&](double x) {
    const double l = 1.0 + std::log(x);
    return std::pow(x, w.power - 1.0) * std::pow(l, w.log_power - 1.0) * (w.power * l + w.log_power);
  };
  // sum_{n=m}^{N} f(n) = int_m^N f + (f(m) + f(N))/2 + (f'(N) - f'(m))/12 + O(f / m^3).
  const double tail = weight_integral(w, m, n) + 0.5 * (f(m) + f(n)) + (df(n) - df(m)) / 12.0;
  return (head ? *head : kernels::weight_sum(w, 1, kDirectTerms - 1)) + tail;
}

}  // namespace

const char* to_string(Convergence c) noexcept { return c == Convergence::Converges ? "converges" : "diverges"; }

double PowerLogFamily::value(double n) const { return std::exp(log_value(n)); }

double PowerLogFamily::log_value(double n) const {
  const double m = n + offset;
  if (!(m >= 1.0)) throw std::invalid_argument("PowerLogFamily: index + offset must be >= 1");
  double l = std::log(m);
  if (log_base > 0.0) l /= std::log(log_base);
  return -beta * std::log(m) - delta * std::log1p(l);
}

FiniteSeq PowerLogFamily::sequence(std::size_t count, std::size_t first) const {
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = value(static_cast<double>(first + i));
  return FiniteSeq(std::move(v));
}

Convergence power_log_oracle(double beta, double delta, const SpaceSpec& spec) {
  spec.validate();
  const double db = beta - spec.r;
  const double scale = std::max({1.0, std::abs(beta), std::abs(spec.r)});
  const bool beta_eq = std::abs(db) <= kExpTol * scale;
  if (spec.p_infinite()) {
    if (beta_eq) return delta >= spec.gamma - kExpTol ? Convergence::Converges : Convergence::Diverges;
    return db > 0.0 ? Convergence::Converges : Convergence::Diverges;
  }
  if (!beta_eq) return db > 0.0 ? Convergence::Converges : Convergence::Diverges;
  const double s = (delta - spec.gamma) * spec.p;
  return s > 1.0 + kExpTol ? Convergence::Converges : Convergence::Diverges;
}

void InclusionCase::validate() const {
  auto fail = [this](const char* what) {
    throw std::invalid_argument(fmt::format("inclusion case {}: {}", id, what));
  };
  if (!positive(r) || !std::isfinite(r)) fail("r must be positive and finite");
  switch (id) {
    case 'a':
      if (!positive(p) || !positive(q)) fail("p, q must be positive");
      if (!positive(e) || !std::isfinite(e)) fail("e must be positive");
      break;
    case 'b':
      if (!positive(p) || !(p < q)) fail("needs 0 < p < q");
      break;
    case 'c':
      if (!positive(p)) fail("p must be positive");
      if (!positive(e) || !std::isfinite(e)) fail("e must be positive");
      if (!positive(gamma) || !positive(alpha) || !std::isfinite(gamma) || !std::isfinite(alpha))
        fail("gamma, alpha must be positive");
      break;
    case 'd':
      if (!positive(p) || !(p < q)) fail("needs 0 < p < q");
      if (!positive(gamma) || !std::isfinite(gamma)) fail("gamma must be positive");
      break;
    case 'e':
      if (!positive(p)) fail("p must be positive");
      if (!positive(alpha) || !(alpha < gamma) || !std::isfinite(gamma)) fail("needs 0 < alpha < gamma");
      break;
    default:
      fail("unknown case (expected a..e)");
  }
}

SpaceSpec InclusionCase::small() const {
  validate();
  switch (id) {
    case 'a': return SpaceSpec::lorentz(p, r + e);
    case 'b': return SpaceSpec::lorentz(p, r);
    case 'c': return SpaceSpec::lorentz_zygmund(p, r + e, gamma);
    case 'd': return SpaceSpec::lorentz_zygmund(p, r, gamma);
    default: return SpaceSpec::lorentz_zygmund(p, r, gamma);
  }
}

SpaceSpec InclusionCase::big() const {
  validate();
  switch (id) {
    case 'a': return SpaceSpec::lorentz(q, r);
    case 'b': return SpaceSpec::lorentz(q, r);
    case 'c': return SpaceSpec::lorentz_zygmund(p, r, alpha);
    case 'd': return SpaceSpec::lorentz_zygmund(q, r, gamma);
    default: return SpaceSpec::lorentz_zygmund(p, r, alpha);
  }
}

PowerLogFamily InclusionCase::witness() const {
  validate();
  switch (id) {
    case 'a':
    case 'c': return {r + e / 2.0, 0.0};
    case 'b': return {r, inv(p)};
    case 'd': return {r, gamma + inv(p)};
    default: return {r, alpha + inv(p) + (gamma - alpha) / 2.0};
  }
}

std::string InclusionCase::describe() const {
  return fmt::format("case {}: {} in {}", id, small().to_string(), big().to_string());
}

bool WitnessReport::certified() const noexcept {
  return oracle_in == Convergence::Converges && oracle_out == Convergence::Diverges && numeric_in.converged() &&
         numeric_out.diverging();
}

WitnessReport certify_witness(const PowerLogFamily& family, const SpaceSpec& big, const SpaceSpec& small,
                              std::size_t length, const VerdictPolicy& policy) {
  if (family.offset != 0.0 || family.log_base != 0.0) {
    throw std::invalid_argument("certify_witness: oracle needs offset 0 and natural log");
  }
  WitnessReport rep;
  rep.family = family;
  rep.in_space = big;
  rep.not_in_space = small;
  rep.length = length;
  rep.oracle_in = power_log_oracle(family.beta, family.delta, big);
  rep.oracle_out = power_log_oracle(family.beta, family.delta, small);
  if (rep.oracle_in != Convergence::Converges || rep.oracle_out != Convergence::Diverges) {
    throw std::logic_error(fmt::format("witness (beta={}, delta={}) is not in {} \\ {} by the integral test",
                                       family.beta, family.delta, big.to_string(), small.to_string()));
  }
  const FiniteSeq seq = family.sequence(length);
  rep.numeric_in = truncated_norms(seq, big, policy);
  rep.numeric_out = truncated_norms(seq, small, policy);
  return rep;
}

WitnessReport witness_sequence(const InclusionCase& c, std::size_t length, const VerdictPolicy& policy) {
  return certify_witness(c.witness(), c.big(), c.small(), length, policy);
}

std::optional<PowerLogFamily> find_witness(const SpaceSpec& small, const SpaceSpec& big) {
  if (!is_strictly_contained(small, big)) return std::nullopt;
  if (small.r > big.r) return PowerLogFamily{(small.r + big.r) / 2.0, 0.0};
  // Equal r: need delta in big (delta > gamma_b + 1/q, or >= gamma_b for q = inf)
  // and not in small (delta <= gamma_s + 1/p, or < gamma_s for p = inf).
  const double lo = big.gamma + big.inv_p();
  const double hi = small.gamma + small.inv_p();
  const bool lo_closed = big.p_infinite();
  const bool hi_closed = !small.p_infinite();
  double delta;
  if (lo < hi) {
    delta = 0.5 * (lo + hi);
  } else if (lo == hi && lo_closed && hi_closed) {
    delta = lo;
  } else {
    return std::nullopt;
  }
  const PowerLogFamily f{big.r, delta};
  if (power_log_oracle(f.beta, f.delta, big) != Convergence::Converges ||
      power_log_oracle(f.beta, f.delta, small) != Convergence::Diverges) {
    return std::nullopt;
  }
  return f;
}

double ones_norm(const SpaceSpec& spec, std::size_t N) {
  spec.validate();
  if (N == 0) throw std::invalid_argument("ones_norm: N must be >= 1");
  const double n = static_cast<double>(N);
  if (spec.p_infinite()) return std::pow(n, spec.r) * std::pow(1.0 + std::log(n), spec.gamma);
  const double s = long_weight_sum(weight_of(spec), N);
  return spec.p == 1.0 ? s : std::pow(s, 1.0 / spec.p);
}

namespace {

/// ones_norm over a grid, sharing partial sums between grid points.
std::vector<double> ones_norms(const SpaceSpec& spec, const std::vector<std::size_t>& Ns) {
  spec.validate();
  std::vector<std::size_t> order(Ns.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return Ns[x] < Ns[y]; });
  std::vector<double> out(Ns.size());
  const auto w = weight_of(spec);
  double running = 0.0, head = 0.0;
  std::size_t done = 0;
  bool have_head = false;
  for (std::size_t i : order) {
    const std::size_t N = Ns[i];
    if (N == 0) throw std::invalid_argument("ones_norm: N must be >= 1");
    if (spec.p_infinite()) {
      out[i] = ones_norm(spec, N);
      continue;
    }
    double s = 0.0;
    if (N <= kDirectTerms) {
      if (N > done) {
        running += kernels::weight_sum(w, done + 1, N);
        done = N;
      }
      s = N == done ? running : kernels::weight_sum(w, 1, N);
    } else {
      if (!have_head) {
        head = kernels::weight_sum(w, 1, kDirectTerms - 1);
        have_head = true;
      }
      s = long_weight_sum(w, N, &head);
    }
    out[i] = spec.p == 1.0 ? s : std::pow(s, 1.0 / spec.p);
  }
  return out;
}

}  // namespace

RatioProfile ones_ratio_profile(const SpaceSpec& s1, const SpaceSpec& s2, const std::vector<std::size_t>& Ns,
                                const ProfilePolicy& policy) {
  RatioProfile prof;
  prof.Ns = Ns;
  prof.ratios.reserve(Ns.size());
  const auto a = ones_norms(s1, Ns), b = ones_norms(s2, Ns);
  for (std::size_t i = 0; i < Ns.size(); ++i) prof.ratios.push_back(a[i] / b[i]);
  prof.predicted_rate = s1.r - s2.r;
  classify_profile(prof, policy);
  return prof;
}

double ones_ratio_limit(const SpaceSpec& s1, const SpaceSpec& s2) {
  if (s1.kind != SpaceKind::Lorentz || s2.kind != SpaceKind::Lorentz) {
    throw std::invalid_argument("ones_ratio_limit: Lorentz specs required");
  }
  if (s1.r != s2.r) throw std::invalid_argument("ones_ratio_limit: needs equal r");
  auto coef = [](const SpaceSpec& s) { return s.p_infinite() ? 1.0 : std::pow(s.r * s.p, 1.0 / s.p); };
  return coef(s2) / coef(s1);
}

double polya_szego_ratio(double alpha, std::size_t N) {
  if (!(alpha > -1.0)) throw std::invalid_argument("polya_szego_ratio: alpha must exceed -1");
  if (N == 0) throw std::invalid_argument("polya_szego_ratio: N must be >= 1");
  const double s = kernels::weight_sum({alpha, 0.0}, 1, N);
  return s / std::pow(static_cast<double>(N), alpha + 1.0);
}

bool convexity_check(const FiniteSeq& seq, double tol) {
  const auto v = seq.values();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i] < v[i + 1]) return false;
    if (i + 2 < v.size() && v[i] - 2.0 * v[i + 1] + v[i + 2] < -tol * v[i]) return false;
  }
  return true;
}

DoublingEstimate doubling_check(const std::function<double(double)>& log_eps, std::size_t N, double rel_growth) {
  if (N == 0) throw std::invalid_argument("doubling_check: N must be >= 1");
  DoublingEstimate est;
  double best = -kInf;
  double head = -kInf;
  for (std::size_t n = 1; n <= N; ++n) {
    const double x = static_cast<double>(n);
    const double lr = log_eps(x) - log_eps(2.0 * x);
    if (lr > best) {
      best = lr;
      est.argmax = n;
    }
    if (n == std::max<std::size_t>(1, N / 2)) head = best;
  }
  est.sup = std::exp(best);
  est.head_sup = std::exp(head);
  est.bounded = std::isfinite(best) && best - head <= std::log1p(rel_growth);
  return est;
}

DoublingEstimate doubling_check(const PowerLogFamily& family, std::size_t N, double rel_growth) {
  return doubling_check([&family](double n) { return family.log_value(n); }, N, rel_growth);
}

}  // namespace scalelab
