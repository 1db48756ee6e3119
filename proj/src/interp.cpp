#include "scalelab/interp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace scalelab {

namespace {

constexpr double kInfD = std::numeric_limits<double>::infinity();

void require_positive_t(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("K-functional: t must be positive");
}

// inf ||y||_A / ||y||_B over R^d for unscaled norms.
double norm_ratio_floor(NormKind a, NormKind b, std::size_t d) {
  const auto rank = [](NormKind k) { return k == NormKind::L1 ? 0 : k == NormKind::L2 ? 1 : 2; };
  const int ra = rank(a), rb = rank(b);
  if (ra <= rb) return 1.0;
  const double dd = static_cast<double>(d);
  if (ra - rb == 2) return 1.0 / dd;
  return 1.0 / std::sqrt(dd);
}

// Orthonormal basis (Euclidean) of span(basis) by modified Gram-Schmidt.
std::vector<std::vector<double>> orthonormal(const std::vector<std::vector<double>>& basis) {
  std::vector<std::vector<double>> q;
  for (auto v : basis) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : q) {
        const double d = std::inner_product(u.begin(), u.end(), v.begin(), 0.0);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= d * u[i];
      }
    const double n = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (n > 1e-12) {
      for (double& x : v) x /= n;
      q.push_back(std::move(v));
    }
  }
  return q;
}

double trapezoid_refined(const std::function<double(double)>& f, double a, double b, double rel_tol, bool& stable) {
  std::size_t n = 64;
  const double h0 = (b - a) / static_cast<double>(n);
  double sum = 0.5 * (f(a) + f(b));
  for (std::size_t i = 1; i < n; ++i) sum += f(a + h0 * static_cast<double>(i));
  double prev = sum * h0;
  constexpr std::size_t kMaxIntervals = std::size_t{1} << 22;
  while (n < kMaxIntervals) {
    const double h = (b - a) / static_cast<double>(2 * n);
    for (std::size_t i = 0; i < n; ++i) sum += f(a + h * static_cast<double>(2 * i + 1));
    n *= 2;
    const double cur = sum * h;
    if (std::abs(cur - prev) <= rel_tol * std::abs(cur)) return cur;
    prev = cur;
  }
  stable = false;
  return prev;
}

}  // namespace

const char* to_string(BoundType b) noexcept {
  switch (b) {
    case BoundType::Exact: return "exact";
    case BoundType::Upper: return "upper";
    case BoundType::Lower: return "lower";
  }
  return "?";
}

double k_l1linf(std::span<const double> x, double t) {
  if (!(t >= 0.0) || std::isnan(t)) throw std::invalid_argument("k_l1linf: t must be >= 0");
  std::vector<double> a(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) a[i] = std::abs(x[i]);
  std::sort(a.begin(), a.end(), std::greater<>{});
  const double fl = std::floor(t);
  if (fl >= static_cast<double>(a.size())) return std::accumulate(a.begin(), a.end(), 0.0);
  const auto k = static_cast<std::size_t>(fl);
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += a[i];
  return s + (t - fl) * a[k];
}

double FiniteDimNorm::operator()(std::span<const double> v) const {
  double r = 0.0;
  switch (kind) {
    case NormKind::L1:
      for (double x : v) r += std::abs(x);
      break;
    case NormKind::L2:
      for (double x : v) r += x * x;
      r = std::sqrt(r);
      break;
    case NormKind::Linf:
      for (double x : v) r = std::max(r, std::abs(x));
      break;
  }
  return scale * r;
}

void FiniteDimCouple::validate() const {
  if (dim == 0) throw std::invalid_argument("FiniteDimCouple: dim must be positive");
  if (!(norm_x.scale > 0.0) || !(norm_y.scale > 0.0)) throw std::invalid_argument("FiniteDimCouple: scales must be positive");
  for (const auto& v : y_basis)
    if (v.size() != dim) throw std::invalid_argument("FiniteDimCouple: basis vector of wrong length");
}

KBounds k_functional(const FiniteDimCouple& couple, std::span<const double> x, double t) {
  couple.validate();
  require_positive_t(t);
  if (x.size() != couple.dim) throw std::invalid_argument("k_functional: x has wrong length");
  const std::size_t d = couple.dim;
  const bool whole = couple.y_basis.empty();
  const auto q = whole ? std::vector<std::vector<double>>{} : orthonormal(couple.y_basis);
  const std::size_t k = whole ? d : q.size();

  auto to_y = [&](const std::vector<double>& c) {
    if (whole) return c;
    std::vector<double> y(d, 0.0);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < d; ++i) y[i] += c[j] * q[j][i];
    return y;
  };
  std::vector<double> diff(d);
  auto objective = [&](const std::vector<double>& c) {
    const auto y = to_y(c);
    for (std::size_t i = 0; i < d; ++i) diff[i] = x[i] - y[i];
    return couple.norm_x(diff) + t * couple.norm_y(y);
  };

  // Directions: all of {-1,0,1}^k \ {0} for small k, coordinate axes otherwise.
  std::vector<std::vector<double>> dirs;
  if (k <= 4) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<double> v(k);
      std::size_t c = code;
      bool nonzero = false;
      for (std::size_t i = 0; i < k; ++i) {
        v[i] = static_cast<double>(c % 3) - 1.0;
        nonzero = nonzero || v[i] != 0.0;
        c /= 3;
      }
      if (nonzero) dirs.push_back(std::move(v));
    }
  } else {
    for (std::size_t i = 0; i < k; ++i)
      for (double s : {1.0, -1.0}) {
        std::vector<double> v(k, 0.0);
        v[i] = s;
        dirs.push_back(std::move(v));
      }
  }

  std::vector<std::vector<double>> starts;
  starts.emplace_back(k, 0.0);
  if (whole) {
    starts.emplace_back(x.begin(), x.end());
  } else {
    std::vector<double> c(k);
    for (std::size_t j = 0; j < k; ++j) c[j] = std::inner_product(q[j].begin(), q[j].end(), x.begin(), 0.0);
    starts.push_back(std::move(c));
  }
  std::vector<double> half = starts.back();
  for (double& v : half) v *= 0.5;
  starts.push_back(std::move(half));

  double xmax = 0.0;
  for (double v : x) xmax = std::max(xmax, std::abs(v));
  const double scale = std::max(xmax, 1e-300);

  double best = kInfD;
  for (auto c : starts) {
    double fc = objective(c);
    double step = 0.5 * scale;
    std::size_t iters = 0;
    while (step > 1e-14 * scale && iters < 200000) {
      ++iters;
      bool improved = false;
      for (const auto& dir : dirs) {
        std::vector<double> trial = c;
        for (std::size_t i = 0; i < k; ++i) trial[i] += step * dir[i];
        const double ft = objective(trial);
        if (ft < fc) {
          fc = ft;
          c = std::move(trial);
          improved = true;
          break;
        }
      }
      if (!improved) step *= 0.5;
    }
    best = std::min(best, fc);
  }

  KBounds out;
  out.upper = best;
  const double nx = couple.norm_x(x);
  const double emb =
      (couple.norm_y.scale / couple.norm_x.scale) * norm_ratio_floor(couple.norm_y.kind, couple.norm_x.kind, d);
  out.lower = std::min(1.0, t * emb) * nx;
  if (!whole && couple.norm_x.kind == NormKind::L2) {
    std::vector<double> r(x.begin(), x.end());
    for (const auto& u : q) {
      const double p = std::inner_product(u.begin(), u.end(), x.begin(), 0.0);
      for (std::size_t i = 0; i < d; ++i) r[i] -= p * u[i];
    }
    out.lower = std::max(out.lower, couple.norm_x(r));
  }
  // Both bounds are rigorous, so round-off is the only way they can cross.
  if (out.lower > out.upper) out.lower = out.upper;
  if (out.upper - out.lower <= 1e-12 * std::max(1.0, out.upper)) out.lower = out.upper;
  return out;
}

double cc1_lower_bound(const PiecewiseLinear& f, double t) {
  require_positive_t(t);
  const auto& xs = f.xs();
  const auto& ys = f.ys();
  const double M = f.sup_norm();
  double best = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const double delta = std::abs(ys[j] - ys[i]);
      const double w = xs[j] - xs[i];
      auto phi = [&](double d) { return d + t * std::max({0.0, (delta - 2.0 * d) / w, M - d}); };
      double m = std::min({phi(0.0), phi(delta / 2.0), phi(M)});
      if (w != 2.0) {
        const double ds = (delta - w * M) / (2.0 - w);
        if (ds > 0.0) m = std::min(m, phi(ds));
      }
      best = std::max(best, m);
    }
  }
  return best;
}

double cc1_upper_bound(const PiecewiseLinear& f, double t, std::size_t grid_points) {
  require_positive_t(t);
  if (grid_points < 2) throw std::invalid_argument("cc1_upper_bound: need >= 2 grid points");
  double best = f.sup_norm();  // g = 0
  auto try_family = [&](const PiecewiseLinear& g0) {
    const double c1 = g0.c1_norm();
    auto h = [&](double lam) { return sup_distance(f, g0.scaled(lam)) + t * lam * c1; };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 100; ++it) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (h(m1) <= h(m2)) hi = m2;
      else lo = m1;
    }
    best = std::min({best, h(0.5 * (lo + hi)), h(1.0)});
  };
  try_family(f);
  const std::size_t m_max = grid_points - 1;
  for (std::size_t m = 1; m <= m_max;) {
    try_family(PiecewiseLinear::interpolate(f, m));
    const std::size_t next = m + std::max<std::size_t>(1, m / 2);
    m = (m < m_max && next > m_max) ? m_max : next;
  }
  return best;
}

KBounds k_functional_cc1(const PiecewiseLinear& f, double t, std::size_t grid_points) {
  KBounds b;
  b.lower = cc1_lower_bound(f, t);
  b.upper = cc1_upper_bound(f, t, grid_points);
  return b;
}

double cc1_barrier(const PiecewiseLinear& f, double c) {
  const auto& xs = f.xs();
  const auto& ys = f.ys();
  double best = std::max(0.0, f.sup_norm() - c);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      best = std::max(best, (std::abs(ys[j] - ys[i]) - 2.0 * c) / (xs[j] - xs[i]));
  return best;
}

double CC1Witness::certificate(double t) const {
  require_positive_t(t);
  return std::min(0.5, t / (b - a));
}

double CC1Witness::certified_lower(double t) const { return std::max(certificate(t), cc1_lower_bound(f, t)); }

CC1Witness cc1_witness(double a, double b, std::size_t grid_points) {
  if (!(0.0 < a && a < b && b < 1.0)) throw std::invalid_argument("cc1_witness: needs 0 < a < b < 1");
  CC1Witness w;
  w.a = a;
  w.b = b;
  w.f = PiecewiseLinear::ramp(a, b);
  w.samples = w.f.sample(grid_points);
  return w;
}

PiecewiseLinear centred_ramp(double w) {
  if (!(w > 0.0 && w < 1.0)) throw std::invalid_argument("centred_ramp: width must be in (0, 1)");
  return PiecewiseLinear::ramp(0.5 - 0.5 * w, 0.5 + 0.5 * w);
}

KProfile k_profile(const std::function<KValue(double)>& k, const std::vector<double>& ts) {
  KProfile p;
  p.ts = ts;
  for (double t : ts) {
    const KValue v = k(t);
    p.values.push_back(v.value);
    p.types.push_back(v.type);
  }
  return p;
}

KProfileCheck check_k_profile(const KProfile& profile, double tol) {
  KProfileCheck chk;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < profile.ts.size(); ++i)
    if (profile.types[i] == BoundType::Exact) idx.push_back(i);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return profile.ts[a] < profile.ts[b]; });
  chk.exact_points = idx.size();
  for (std::size_t j = 0; j + 1 < idx.size(); ++j) {
    const double t1 = profile.ts[idx[j]], t2 = profile.ts[idx[j + 1]];
    const double k1 = profile.values[idx[j]], k2 = profile.values[idx[j + 1]];
    const double drop = (k1 - k2) / std::max(std::abs(k1), 1e-300);
    chk.worst_monotone = std::max(chk.worst_monotone, drop);
    const double r1 = k1 / t1, r2 = k2 / t2;
    const double rise = (r2 - r1) / std::max(std::abs(r1), 1e-300);
    chk.worst_ratio = std::max(chk.worst_ratio, rise);
  }
  chk.monotone = chk.worst_monotone <= tol;
  chk.ratio_monotone = chk.worst_ratio <= tol;
  return chk;
}

std::vector<double> dyadic_grid(std::size_t k_max) {
  std::vector<double> ts(k_max + 1);
  for (std::size_t k = 0; k <= k_max; ++k) ts[k] = std::ldexp(1.0, -static_cast<int>(k));
  return ts;
}

MembershipVerdict rho_norm(const std::function<double(double)>& K, double theta, double q, std::size_t k_max,
                           const VerdictPolicy& policy) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("rho_norm: theta must be in (0, 1)");
  if (!(q > 0.0)) throw std::invalid_argument("rho_norm: q must be positive");
  const std::size_t n = k_max + 1;
  std::vector<double> scale(n), prefix(n);
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    scale[k] = static_cast<double>(k) * std::numbers::ln2;
    const double b = std::exp2(static_cast<double>(k) * theta) * K(std::ldexp(1.0, -static_cast<int>(k)));
    if (q == kInfD) {
      acc = std::max(acc, b);
    } else {
      acc += q == 1.0 ? b : std::pow(b, q);
    }
    prefix[k] = acc;
  }
  return q == kInfD ? classify_sup(prefix, scale, policy) : classify_sum(prefix, scale, q, policy);
}

RhoCrossCheck rho_continuous_check(const std::function<double(double)>& K, double theta, double q,
                                   std::size_t k_max) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("rho_continuous_check: theta must be in (0, 1)");
  if (!(q > 0.0)) throw std::invalid_argument("rho_continuous_check: q must be positive");
  constexpr std::size_t kPanels = 256;
  RhoCrossCheck out;
  double disc = 0.0, cont = 0.0;
  for (std::size_t k = 0; k <= k_max; ++k) {
    const double b = std::exp2(static_cast<double>(k) * theta) * K(std::ldexp(1.0, -static_cast<int>(k)));
    // Block [2^{-k-1}, 2^{-k}] in u = ln t.
    const double u0 = -static_cast<double>(k + 1) * std::numbers::ln2;
    const double h = std::numbers::ln2 / static_cast<double>(kPanels);
    auto g = [&](double u) { return std::exp(-theta * u) * K(std::exp(u)); };
    if (q == kInfD) {
      disc = std::max(disc, b);
      for (std::size_t i = 0; i <= kPanels; ++i) cont = std::max(cont, g(u0 + h * static_cast<double>(i)));
    } else {
      disc += std::pow(b, q);
      double s = 0.0;
      for (std::size_t i = 0; i <= kPanels; ++i) {
        const double w = (i == 0 || i == kPanels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        s += w * std::pow(g(u0 + h * static_cast<double>(i)), q);
      }
      cont += s * h / 3.0;
    }
  }
  if (q == kInfD) {
    out.discrete = disc;
    out.continuous = cont;
    out.lo = 1.0;
    out.hi = std::exp2(theta);
  } else {
    out.discrete = std::pow(disc, 1.0 / q);
    out.continuous = std::pow(cont, 1.0 / q);
    const double C = (std::exp2(theta * q) - 1.0) / (theta * q);
    out.hi = std::pow(C, 1.0 / q);
    out.lo = 0.5 * out.hi;
  }
  const double ratio = out.discrete > 0.0 ? out.continuous / out.discrete : 0.0;
  out.holds = out.discrete > 0.0 && ratio >= out.lo * (1.0 - 1e-6) && ratio <= out.hi * (1.0 + 1e-6);
  return out;
}

ConditionAReport condition_a_scan(const std::function<KBounds(double)>& witness_bounds, const std::vector<double>& ts,
                                  double c) {
  ConditionAReport rep;
  rep.c = c;
  rep.min_lower = kInfD;
  for (double t : ts) {
    require_positive_t(t);
    ConditionAPoint pt{t, witness_bounds(t)};
    rep.min_lower = std::min(rep.min_lower, pt.bounds.lower);
    if (!(pt.bounds.lower >= c)) rep.failures.push_back(t);
    rep.points.push_back(pt);
  }
  if (ts.empty()) rep.min_lower = 0.0;
  rep.holds = !ts.empty() && rep.failures.empty();
  return rep;
}

std::function<KBounds(double)> cc1_condition_a_family(std::size_t grid_points) {
  return [grid_points](double t) {
    const double w = std::min(t, 0.5);
    const CC1Witness wit = cc1_witness(0.5 - 0.5 * w, 0.5 + 0.5 * w, 2);
    KBounds b;
    b.lower = wit.certified_lower(t);
    b.upper = cc1_upper_bound(wit.f, t, grid_points);
    return b;
  };
}

K2Report k2_check(const std::function<double(double)>& K, const std::vector<double>& ts, double rel_tol) {
  K2Report rep;
  rep.ts = ts;
  for (double t : ts) {
    require_positive_t(t);
    const double kt = K(t);
    if (!(kt > 0.0)) throw std::invalid_argument("k2_check: K(x, t) must be positive (x = 0?)");
    const double integral = trapezoid_refined(K, 0.0, t, rel_tol, rep.stable);
    const double r = integral / kt;
    rep.ratios.push_back(r);
    if (r > rep.gamma) {
      rep.gamma = r;
      rep.argmax_t = t;
    }
  }
  return rep;
}

MembershipVerdict abn_norm(const std::function<double(double)>& K, const std::vector<double>& b,
                           const std::vector<double>& t, const VerdictPolicy& policy) {
  if (b.size() != t.size()) throw std::invalid_argument("abn_norm: b and t lengths differ");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0)) throw std::invalid_argument("abn_norm: t_n must be positive");
    if (i > 0 && !(t[i] < t[i - 1])) throw std::invalid_argument("abn_norm: t_n must strictly decrease");
    if (!(b[i] >= 0.0)) throw std::invalid_argument("abn_norm: b_n must be non-negative");
  }
  std::vector<double> running(t.size());
  double m = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    m = std::max(m, b[i] * K(t[i]));
    running[i] = m;
  }
  return classify_sup(running, sequence_log_scale(t.size()), policy);
}

std::vector<AbnChainPoint> abn_witness_chain(const std::function<double(double)>& certified_k, const std::vector<double>& b,
                                             const std::vector<double>& t) {
  if (b.size() != t.size()) throw std::invalid_argument("abn_witness_chain: b and t lengths differ");
  std::vector<AbnChainPoint> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    AbnChainPoint p{i + 1, t[i], b[i], certified_k(t[i]), 0.0};
    p.norm_lower = p.b * p.k_lower;
    out.push_back(p);
  }
  return out;
}

PropositionReport proposition_witness(const std::function<double(double)>& phi,
                                      const std::function<PiecewiseLinear(double)>& family, double c,
                                      std::size_t n_lo, std::size_t n_hi) {
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("proposition_witness: c must be in (0, 1)");
  if (n_lo == 0 || n_hi < n_lo) throw std::invalid_argument("proposition_witness: bad n range");
  PropositionReport rep;
  rep.c = c;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    PropositionPoint pt;
    pt.n = n;
    pt.eps = 1.0 / static_cast<double>(n);
    pt.phi = phi(pt.eps);
    pt.t = 1.0 / pt.phi;
    try {
      const PiecewiseLinear z = family(pt.eps);
      pt.unit = std::abs(z.sup_norm() - 1.0) <= 1e-12;
      pt.barrier = cc1_barrier(z, c);
      pt.bound = std::min(c, pt.t * pt.barrier);
      // Knots are rounded to doubles, so a width near 1/phi carries a relative
      // error of order eps * phi.
      const double slack = 1e-12 + 8.0 * std::numeric_limits<double>::epsilon() * pt.phi;
      pt.passes = pt.unit && pt.barrier >= pt.phi * (1.0 - slack) && pt.bound >= c * (1.0 - slack);
    } catch (const std::invalid_argument&) {
      pt.passes = false;
    }
    if (!pt.passes) rep.failures.push_back(n);
    rep.points.push_back(pt);
  }
  rep.holds = rep.failures.empty();
  return rep;
}

Equivalence k1_equivalence(const std::function<double(double)>& K, const std::function<double(double)>& phi,
                           const std::vector<double>& ts) {
  Equivalence e{kInfD, 0.0};
  for (double t : ts) {
    const double r = K(t) / phi(t);
    e.lo = std::min(e.lo, r);
    e.hi = std::max(e.hi, r);
  }
  return e;
}

}  // namespace scalelab
