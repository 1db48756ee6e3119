#include <cmath>

#include "cli_common.hpp"

namespace cli {

using namespace scalelab;

namespace {

std::optional<ProfileVerdict> parse_profile_expectation(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "diverges") return ProfileVerdict::Diverges;
  if (s == "vanishes") return ProfileVerdict::Vanishes;
  if (s == "bounded") return ProfileVerdict::Bounded;
  throw ConfigError("--expect must be diverges, vanishes or bounded");
}

void check_membership_expectation(const std::string& expect, const MembershipVerdict& v, Outcome& o) {
  if (expect.empty()) return;
  if (expect != "converges" && expect != "diverges") throw ConfigError("--expect must be converges or diverges");
  const bool ok = expect == "converges" ? v.converged() : v.diverging();
  if (!ok) o.failures.push_back(std::string("expected ") + expect + ", verdict is " + to_string(v.status));
}

void add_rearrange(CLI::App& app, std::vector<Command>& out) {
  auto* sub = app.add_subcommand("rearrange", "Decreasing rearrangement of a sequence");
  auto src = std::make_shared<SeqSource>();
  src->add_options(sub, "Sequence");
  out.push_back({sub, add_common(sub), [src] {
                   Outcome o;
                   const FiniteSeq a = rearrange(src->load());
                   o.result = {{"length", a.size()}, {"rearranged", a.vector()}};
                   return o;
                 }});
}

void add_norm(CLI::App& app, std::vector<Command>& out) {
  auto* sub = app.add_subcommand("norm", "Quasi-norm of a sequence in l:p:r or lz:p:r:g");
  auto src = std::make_shared<SeqSource>();
  auto spec = std::make_shared<std::string>();
  src->add_options(sub, "Sequence");
  sub->add_option("--spec", *spec, "Space, e.g. l:2:1 or lz:inf:1:2")->required();
  out.push_back({sub, add_common(sub), [src, spec] {
                   Outcome o;
                   const SpaceSpec s = spec_arg(*spec);
                   const FiniteSeq a = src->load();
                   const auto v = truncated_norms(a, s);
                   o.result = {{"spec", to_json(s)}, {"norm", norm(a, s)}, {"verdict", to_json(v)}};
                   o.profile = partial_norm_table(v);
                   return o;
                 }});
}

void add_lz_norm(CLI::App& app, std::vector<Command>& out) {
  auto* sub = app.add_subcommand("lz-norm", "Lorentz-Zygmund quasi-norm with explicit p, r, gamma");
  auto src = std::make_shared<SeqSource>();
  struct Args {
    double p = 1.0, r = 1.0, gamma = 0.0;
  };
  auto a = std::make_shared<Args>();
  src->add_options(sub, "Sequence");
  sub->add_option("--p", a->p, "Exponent p (inf allowed)");
  sub->add_option("--r", a->r, "Exponent r");
  sub->add_option("--gamma", a->gamma, "Log exponent gamma");
  out.push_back({sub, add_common(sub), [src, a] {
                   Outcome o;
                   const FiniteSeq seq = src->load();
                   double value = 0.0;
                   try {
                     value = lz_norm(seq, a->p, a->r, a->gamma);
                   } catch (const std::invalid_argument& e) {
                     throw ConfigError(e.what());
                   }
                   o.result = {{"p", a->p}, {"r", a->r}, {"gamma", a->gamma}, {"norm", value}, {"length", seq.size()}};
                   return o;
                 }});
}

void add_membership(CLI::App& app, std::vector<Command>& out) {
  auto* sub = app.add_subcommand("membership", "Membership verdict from truncated norms");
  auto src = std::make_shared<SeqSource>();
  auto spec = std::make_shared<std::string>();
  auto expect = std::make_shared<std::string>();
  src->add_options(sub, "Sequence");
  sub->add_option("--spec", *spec, "Space, e.g. l:1:1")->required();
  sub->add_option("--expect", *expect, "Assert converges or diverges");
  out.push_back({sub, add_common(sub), [src, spec, expect] {
                   Outcome o;
                   const SpaceSpec s = spec_arg(*spec);
                   const auto v = truncated_norms(src->load(), s);
                   o.result = {{"spec", to_json(s)}, {"verdict", to_json(v)}};
                   if (!src->family.empty()) {
                     o.result["oracle"] = to_string(power_log_oracle(src->family[0], src->family[1], s));
                   }
                   check_membership_expectation(*expect, v, o);
                   o.profile = partial_norm_table(v);
                   return o;
                 }});
}

void add_dilate(CLI::App& app, std::vector<Command>& out) {
  auto* sub = app.add_subcommand("dilate", "Dilation b_n = a_[n/C] and the dilation estimate");
  auto src = std::make_shared<SeqSource>();
  struct Args {
    double c = 2.0;
    double p = 0.0, r = 0.0;
  };
  auto a = std::make_shared<Args>();
  src->add_options(sub, "Non-increasing sequence");
  sub->add_option("--C", a->c, "Dilation factor")->required();
  sub->add_option("--p", a->p, "Check the estimate for this p (with --r)");
  sub->add_option("--r", a->r, "Check the estimate for this r (with --p)");
  out.push_back({sub, add_common(sub), [src, a] {
                   Outcome o;
                   const FiniteSeq seq = src->load();
                   FiniteSeq d;
                   try {
                     d = dilate(seq, a->c);
                   } catch (const std::invalid_argument& e) {
                     throw ConfigError(e.what());
                   }
                   o.result = {{"C", a->c}, {"length", d.size()}, {"dilated", d.vector()}};
                   if (a->p > 0.0 || a->r > 0.0) {
                     if (!(a->p > 0.0 && a->r > 0.0)) throw ConfigError("--p and --r go together");
                     const auto b = dilation_bound_check(seq, a->c, a->p, a->r);
                     o.result["bound"] = {
                         {"lhs", b.lhs}, {"rhs", b.rhs}, {"constant", b.constant}, {"holds", b.holds}};
                     if (!b.holds) o.failures.push_back("dilation estimate violated");
                   }
                   return o;
                 }});
}

void add_witness(CLI::App& app, std::vector<Command>& out) {
  auto* sub = app.add_subcommand("witness", "Certified witness for a strict scale inclusion");
  auto c = std::make_shared<InclusionCase>();
  auto id = std::make_shared<std::string>("a");
  auto length = std::make_shared<std::size_t>(kWitnessLength);
  sub->add_option("--case", *id, "Inclusion case a, b, c, d or e")->check(CLI::IsMember({"a", "b", "c", "d", "e"}));
  sub->add_option("--p", c->p, "p");
  sub->add_option("--q", c->q, "q (cases a, b, d)");
  sub->add_option("--r", c->r, "r");
  sub->add_option("--e", c->e, "Smoothness gap e (cases a, c)");
  sub->add_option("--gamma", c->gamma, "gamma (cases c, d, e)");
  sub->add_option("--alpha", c->alpha, "alpha (cases c, e)");
  sub->add_option("--length", *length, "Truncation length");
  out.push_back({sub, add_common(sub), [c, id, length] {
                   Outcome o;
                   InclusionCase ic = *c;
                   ic.id = (*id)[0];
                   if (*length < 1024 || *length > (std::size_t{1} << 24)) throw ConfigError("--length out of range");
                   try {
                     ic.validate();
                   } catch (const std::invalid_argument& e) {
                     throw ConfigError(e.what());
                   }
                   const auto w = witness_sequence(ic, *length);
                   o.result = {{"case", ic.describe()}, {"report", to_json(w)}};
                   if (!w.certified()) o.failures.push_back("witness not certified");
                   o.profile = partial_norm_table(w.numeric_out);
                   return o;
                 }});
}

void add_ones_ratio(CLI::App& app, std::vector<Command>& out) {
  auto* sub = app.add_subcommand("ones-ratio", "Profile of ||1_N||_s1 / ||1_N||_s2");
  struct Args {
    std::string s1, s2, expect;
    std::size_t n_min = 10, n_max = 100000;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--s1", a->s1, "Numerator space")->required();
  sub->add_option("--s2", a->s2, "Denominator space")->required();
  sub->add_option("--Nmin", a->n_min, "Smallest N");
  sub->add_option("--Nmax", a->n_max, "Largest N");
  sub->add_option("--expect", a->expect, "Assert diverges, vanishes or bounded");
  out.push_back({sub, add_common(sub), [a] {
                   Outcome o;
                   const SpaceSpec s1 = spec_arg(a->s1), s2 = spec_arg(a->s2);
                   if (a->n_min == 0 || a->n_max < a->n_min || a->n_max > (std::size_t{1} << 30))
                     throw ConfigError("bad N range");
                   const auto p = ones_ratio_profile(s1, s2, log_grid(a->n_min, a->n_max));
                   o.result = {{"s1", to_json(s1)}, {"s2", to_json(s2)}, {"profile", to_json(p)}};
                   if (s1.r == s2.r && s1.kind == SpaceKind::Lorentz && s2.kind == SpaceKind::Lorentz &&
                       !s1.p_infinite() && !s2.p_infinite()) {
                     const double lim = ones_ratio_limit(s1, s2);
                     o.result["limit"] = lim;
                     o.result["limit_rel_error"] = std::abs(p.ratios.back() - lim) / lim;
                   }
                   if (auto e = parse_profile_expectation(a->expect); e && *e != p.verdict) {
                     o.failures.push_back(std::string("expected ") + a->expect + ", profile is " + to_string(p.verdict));
                   }
                   o.profile = ratio_table(p);
                   return o;
                 }});
}

void add_polya(CLI::App& app, std::vector<Command>& out) {
  auto* sub = app.add_subcommand("polya", "sum k^alpha / N^(alpha+1) against 1/(alpha+1)");
  struct Args {
    std::vector<double> alphas{-0.5, 0.0, 1.0, 2.5};
    std::size_t N = 1000000;
    double tol = 0.01;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--alpha", a->alphas, "Exponents alpha > -1")->delimiter(',');
  sub->add_option("--N", a->N, "Truncation");
  sub->add_option("--tol", a->tol, "Allowed relative error");
  out.push_back({sub, add_common(sub), [a] {
                   Outcome o;
                   io::CsvTable t({"alpha", "ratio", "limit", "rel_error"});
                   Json rows = Json::array();
                   for (double alpha : a->alphas) {
                     double r = 0.0;
                     try {
                       r = polya_szego_ratio(alpha, a->N);
                     } catch (const std::invalid_argument& e) {
                       throw ConfigError(e.what());
                     }
                     const double lim = 1.0 / (alpha + 1.0);
                     const double err = std::abs(r - lim) / lim;
                     rows.push_back({{"alpha", alpha}, {"ratio", r}, {"limit", lim}, {"rel_error", err}});
                     t.add_row({num(alpha), num(r), num(lim), num(err)});
                     if (!(err < a->tol)) o.failures.push_back("alpha = " + num(alpha) + ": relative error " + num(err));
                   }
                   o.result = {{"N", a->N}, {"tol", a->tol}, {"rows", rows}};
                   o.profile = t;
                   return o;
                 }});
}

}  // namespace

void register_sequence_commands(CLI::App& app, std::vector<Command>& out) {
  add_rearrange(app, out);
  add_norm(app, out);
  add_lz_norm(app, out);
  add_membership(app, out);
  add_dilate(app, out);
  add_witness(app, out);
  add_ones_ratio(app, out);
  add_polya(app, out);
}

}  // namespace cli
