#include <cmath>

#include "cli_common.hpp"

namespace cli {

using namespace scalelab;

namespace {

NormKind norm_kind(const std::string& s) {
  if (s == "l1") return NormKind::L1;
  if (s == "l2") return NormKind::L2;
  if (s == "linf") return NormKind::Linf;
  throw ConfigError("norm must be l1, l2 or linf");
}

std::vector<double> positive_ts(const std::vector<double>& ts, std::size_t k_max) {
  const std::vector<double> out = ts.empty() ? dyadic_grid(k_max) : ts;
  for (double t : out)
    if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("t values must be positive and finite");
  return out;
}

PiecewiseLinear ramp_arg(const std::vector<double>& ab) {
  if (ab.size() != 2) throw ConfigError("--ramp needs A,B");
  try {
    return PiecewiseLinear::ramp(ab[0], ab[1]);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

/// K(x, .) for the exact couples.
std::function<double(double)> exact_k(const std::string& couple, const SeqSource& src) {
  if (couple != "l1linf") throw ConfigError("this subcommand needs --couple l1linf");
  auto x = std::make_shared<std::vector<double>>(src.load_raw());
  if (x->empty()) throw ConfigError("empty x");
  return [x](double t) { return k_l1linf(*x, t); };
}

void add_kfunc(CLI::App& app, std::vector<Command>& out) {
  auto* sub = app.add_subcommand("kfunc", "K-functional K(x, t) with exactness tags");
  auto src = std::make_shared<SeqSource>();
  struct Args {
    std::string couple = "l1linf";
    std::vector<double> ts;
    std::vector<double> ramp{0.4, 0.6};
    std::string norm_x = "l1", norm_y = "linf";
    double scale_x = 1.0, scale_y = 1.0;
    std::size_t grid = kCC1Grid;
  };
  auto a = std::make_shared<Args>();
  src->add_options(sub, "Element x");
  sub->add_option("--couple", a->couple, "l1linf, finite or cc1")->check(CLI::IsMember({"l1linf", "finite", "cc1"}));
  sub->add_option("--t", a->ts, "Values of t")->delimiter(',')->required();
  sub->add_option("--ramp", a->ramp, "cc1: ramp breakpoints A,B")->delimiter(',');
  sub->add_option("--norm-x", a->norm_x, "finite: norm of X (l1, l2, linf)");
  sub->add_option("--norm-y", a->norm_y, "finite: norm of Y (l1, l2, linf)");
  sub->add_option("--scale-x", a->scale_x, "finite: scale of the X norm");
  sub->add_option("--scale-y", a->scale_y, "finite: scale of the Y norm");
  sub->add_option("--grid", a->grid, "cc1: largest uniform grid for the upper bound");
  out.push_back({sub, add_common(sub), [src, a] {
                   Outcome o;
                   const auto ts = positive_ts(a->ts, 0);
                   KProfile prof;
                   prof.ts = ts;
                   io::CsvTable t({"t", "lower", "upper", "type"});
                   Json rows = Json::array();
                   auto push = [&](double tt, const KBounds& b) {
                     const BoundType type = b.exact() ? BoundType::Exact : BoundType::Upper;
                     prof.values.push_back(b.upper);
                     prof.types.push_back(type);
                     rows.push_back({{"t", tt}, {"lower", b.lower}, {"upper", b.upper}, {"type", to_string(type)}});
                     t.add_row({num(tt), num(b.lower), num(b.upper), to_string(type)});
                   };
                   if (a->couple == "l1linf") {
                     const auto x = src->load_raw();
                     for (double tt : ts) {
                       const double k = k_l1linf(x, tt);
                       push(tt, {k, k});
                     }
                   } else if (a->couple == "finite") {
                     const auto x = src->load_raw();
                     FiniteDimCouple c{x.size(), {norm_kind(a->norm_x), a->scale_x}, {norm_kind(a->norm_y), a->scale_y}, {}};
                     if (x.empty() || x.size() > 8) throw ConfigError("finite couples need 1 <= dim <= 8");
                     try {
                       c.validate();
                     } catch (const std::invalid_argument& e) {
                       throw ConfigError(e.what());
                     }
                     for (double tt : ts) push(tt, k_functional(c, x, tt));
                   } else {
                     const PiecewiseLinear f = ramp_arg(a->ramp);
                     if (a->grid < 2 || a->grid > 8193) throw ConfigError("--grid must be in [2, 8193]");
                     for (double tt : ts) push(tt, k_functional_cc1(f, tt, a->grid));
                   }
                   const auto chk = check_k_profile(prof);
                   o.result = {{"couple", a->couple},
                               {"values", rows},
                               {"monotone", chk.monotone},
                               {"ratio_monotone", chk.ratio_monotone},
                               {"exact_points", chk.exact_points}};
                   if (!chk.monotone) o.failures.push_back("K not monotone in t on exact points");
                   if (!chk.ratio_monotone) o.failures.push_back("K(t)/t not monotone on exact points");
                   o.profile = t;
                   return o;
                 }});
}

void add_rho(CLI::App& app, std::vector<Command>& out) {
  auto* sub = app.add_subcommand("rho", "Real-interpolation norm rho_{theta,q} with continuous cross-check");
  auto src = std::make_shared<SeqSource>();
  struct Args {
    std::string couple = "l1linf";
    double theta = 0.5, q = 1.0;
    std::size_t k_max = 30;
  };
  auto a = std::make_shared<Args>();
  src->add_options(sub, "Element x");
  sub->add_option("--couple", a->couple, "l1linf")->check(CLI::IsMember({"l1linf"}));
  sub->add_option("--theta", a->theta, "theta in (0, 1)");
  sub->add_option("--q", a->q, "q in (0, inf]");
  sub->add_option("--kmax", a->k_max, "Dyadic levels 0..kmax");
  out.push_back({sub, add_common(sub), [src, a] {
                   Outcome o;
                   if (!(a->theta > 0.0 && a->theta < 1.0) || !(a->q > 0.0)) throw ConfigError("need 0 < theta < 1, q > 0");
                   if (a->k_max < 7 || a->k_max > 60) throw ConfigError("--kmax must be in [7, 60]");
                   const auto K = exact_k(a->couple, *src);
                   const auto v = rho_norm(K, a->theta, a->q, a->k_max);
                   const auto cc = rho_continuous_check(K, a->theta, a->q, a->k_max);
                   o.result = {{"theta", a->theta},
                               {"q", a->q},
                               {"kmax", a->k_max},
                               {"verdict", to_json(v)},
                               {"cross_check",
                                {{"discrete", cc.discrete},
                                 {"continuous", cc.continuous},
                                 {"lo", cc.lo},
                                 {"hi", cc.hi},
                                 {"holds", cc.holds}}}};
                   if (!cc.holds) o.failures.push_back("continuous norm outside the block bounds");
                   io::CsvTable t({"k", "partial"});
                   for (std::size_t k = 0; k < v.partial_norms.size(); ++k)
                     t.add_row({std::to_string(k), num(v.partial_norms[k])});
                   o.profile = t;
                   return o;
                 }});
}

void add_cond_a(CLI::App& app, std::vector<Command>& out) {
  auto* sub = app.add_subcommand("cond-a", "Condition (a) scan for the (C, C^1) couple on a dyadic grid");
  struct Args {
    double c = 0.5;
    std::size_t k_max = 10;
    std::size_t grid = kCC1Grid;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--c", a->c, "Required lower level");
  sub->add_option("--kmax", a->k_max, "t = 2^-k for k = 0..kmax");
  sub->add_option("--grid", a->grid, "Largest uniform grid for the upper bounds");
  out.push_back({sub, add_common(sub), [a] {
                   Outcome o;
                   if (!(a->c > 0.0)) throw ConfigError("--c must be positive");
                   if (a->k_max > 40) throw ConfigError("--kmax must be <= 40");
                   if (a->grid < 2 || a->grid > 8193) throw ConfigError("--grid must be in [2, 8193]");
                   const auto rep = condition_a_scan(cc1_condition_a_family(a->grid), dyadic_grid(a->k_max), a->c);
                   io::CsvTable t({"t", "lower", "upper"});
                   for (const auto& p : rep.points) t.add_row({num(p.t), num(p.bounds.lower), num(p.bounds.upper)});
                   o.result = {{"c", rep.c},
                               {"kmax", a->k_max},
                               {"min_lower", rep.min_lower},
                               {"failures", rep.failures},
                               {"holds", rep.holds}};
                   if (!rep.holds) o.failures.push_back("certified lower bound below c");
                   o.profile = t;
                   return o;
                 }});
}

void add_k2(CLI::App& app, std::vector<Command>& out) {
  auto* sub = app.add_subcommand("k2", "Constant gamma in int_0^t K <= gamma K(t)");
  auto src = std::make_shared<SeqSource>();
  struct Args {
    std::string couple = "l1linf";
    std::vector<double> ts;
    std::size_t k_max = 10;
    double bound = 0.0;
  };
  auto a = std::make_shared<Args>();
  src->add_options(sub, "Element x");
  sub->add_option("--couple", a->couple, "l1linf")->check(CLI::IsMember({"l1linf"}));
  sub->add_option("--t", a->ts, "Values of t (default: dyadic grid)")->delimiter(',');
  sub->add_option("--kmax", a->k_max, "Dyadic grid size when --t is absent");
  sub->add_option("--bound", a->bound, "Assert gamma <= bound");
  out.push_back({sub, add_common(sub), [src, a] {
                   Outcome o;
                   const auto K = exact_k(a->couple, *src);
                   const auto ts = positive_ts(a->ts, a->k_max);
                   K2Report rep;
                   try {
                     rep = k2_check(K, ts);
                   } catch (const std::invalid_argument& e) {
                     throw ConfigError(e.what());
                   }
                   io::CsvTable t({"t", "ratio"});
                   for (std::size_t i = 0; i < rep.ts.size(); ++i) t.add_row({num(rep.ts[i]), num(rep.ratios[i])});
                   o.result = {{"gamma", rep.gamma}, {"argmax_t", rep.argmax_t}, {"stable", rep.stable}};
                   if (!rep.stable) o.failures.push_back("quadrature did not reach its tolerance");
                   if (a->bound > 0.0 && rep.gamma > a->bound) o.failures.push_back("gamma above --bound");
                   o.profile = t;
                   return o;
                 }});
}

void add_abn(CLI::App& app, std::vector<Command>& out) {
  auto* sub = app.add_subcommand("abn", "sup_n b_n K(x, t_n) with b_n = 2^(n theta), t_n = 2^-n");
  auto src = std::make_shared<SeqSource>();
  struct Args {
    std::string couple = "l1linf";
    double theta = 0.5;
    std::size_t n_max = 40;
  };
  auto a = std::make_shared<Args>();
  src->add_options(sub, "Element x (l1linf)");
  sub->add_option("--couple", a->couple, "l1linf, or cc1 for the ramp witness chain")
      ->check(CLI::IsMember({"l1linf", "cc1"}));
  sub->add_option("--theta", a->theta, "b_n = 2^(n theta)");
  sub->add_option("--nmax", a->n_max, "Terms n = 1..nmax");
  out.push_back({sub, add_common(sub), [src, a] {
                   Outcome o;
                   if (a->n_max < 2 || a->n_max > 60) throw ConfigError("--nmax must be in [2, 60]");
                   std::vector<double> b(a->n_max), t(a->n_max);
                   for (std::size_t n = 1; n <= a->n_max; ++n) {
                     t[n - 1] = std::ldexp(1.0, -static_cast<int>(n));
                     b[n - 1] = std::exp2(a->theta * static_cast<double>(n));
                   }
                   io::CsvTable table({"n", "t", "b", "value"});
                   if (a->couple == "l1linf") {
                     const auto K = exact_k(a->couple, *src);
                     const auto v = abn_norm(K, b, t);
                     o.result = {{"couple", a->couple}, {"theta", a->theta}, {"verdict", to_json(v)}};
                     for (std::size_t i = 0; i < t.size(); ++i)
                       table.add_row({std::to_string(i + 1), num(t[i]), num(b[i]), num(b[i] * K(t[i]))});
                   } else {
                     auto certified = [](double tt) {
                       const double w = std::min(tt, 0.5);
                       return cc1_witness(0.5 - 0.5 * w, 0.5 + 0.5 * w, 2).certified_lower(tt);
                     };
                     const auto chain = abn_witness_chain(certified, b, t);
                     double lo = 0.0;
                     for (const auto& p : chain) {
                       lo = std::max(lo, p.norm_lower);
                       table.add_row({std::to_string(p.n), num(p.t), num(p.b), num(p.norm_lower)});
                     }
                     o.result = {{"couple", a->couple}, {"theta", a->theta}, {"max_norm_lower", lo}};
                   }
                   o.profile = table;
                   return o;
                 }});
}

void add_prop_witness(CLI::App& app, std::vector<Command>& out) {
  auto* sub = app.add_subcommand("prop-witness", "Barrier witnesses z_n with K(z_n, 1/phi(1/n)) >= c");
  struct Args {
    std::string phi = "inv";
    std::string family = "ramp";
    double c = 0.5;
    std::size_t n_lo = 2, n_hi = 1000;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--phi", a->phi, "inv (1/eps) or inv2 (1/eps^2)")->check(CLI::IsMember({"inv", "inv2"}));
  sub->add_option("--family", a->family, "ramp (width (2-2c)/phi) or constant")
      ->check(CLI::IsMember({"ramp", "constant"}));
  sub->add_option("--c", a->c, "Level c in (0, 1)");
  sub->add_option("--nlo", a->n_lo, "First n");
  sub->add_option("--nhi", a->n_hi, "Last n");
  out.push_back({sub, add_common(sub), [a] {
                   Outcome o;
                   if (!(a->c > 0.0 && a->c < 1.0)) throw ConfigError("--c must be in (0, 1)");
                   if (a->n_lo == 0 || a->n_hi < a->n_lo || a->n_hi > 100000) throw ConfigError("bad n range");
                   const bool sq = a->phi == "inv2";
                   auto phi = [sq](double e) { return sq ? 1.0 / (e * e) : 1.0 / e; };
                   const double c = a->c;
                   std::function<PiecewiseLinear(double)> fam;
                   if (a->family == "ramp") fam = [phi, c](double e) { return centred_ramp((2.0 - 2.0 * c) / phi(e)); };
                   else fam = [](double) { return PiecewiseLinear::constant(1.0); };
                   const auto rep = proposition_witness(phi, fam, c, a->n_lo, a->n_hi);
                   io::CsvTable t({"n", "t", "barrier", "bound", "passes"});
                   for (const auto& p : rep.points)
                     t.add_row({std::to_string(p.n), num(p.t), num(p.barrier), num(p.bound), p.passes ? "1" : "0"});
                   o.result = {{"phi", a->phi},
                               {"family", a->family},
                               {"c", c},
                               {"points", rep.points.size()},
                               {"failures", rep.failures},
                               {"holds", rep.holds}};
                   if (!rep.holds) o.failures.push_back(std::to_string(rep.failures.size()) + " witnesses fail");
                   o.profile = t;
                   return o;
                 }});
}

}  // namespace

void register_interp_commands(CLI::App& app, std::vector<Command>& out) {
  add_kfunc(app, out);
  add_rho(app, out);
  add_cond_a(app, out);
  add_k2(app, out);
  add_abn(app, out);
  add_prop_witness(app, out);
}

}  // namespace cli
