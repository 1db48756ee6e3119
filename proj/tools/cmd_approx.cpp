#include <algorithm>
#include <cmath>
#include <random>

#include "cli_common.hpp"
#include "scalelab/svd.hpp"

namespace cli {

using namespace scalelab;

namespace {

std::vector<std::size_t> n_grid(std::size_t lo, std::size_t hi, std::size_t cap) {
  if (lo == 0 || hi < lo) throw ConfigError("bad N range");
  if (hi > cap) throw ConfigError("--Nmax above the budget of " + std::to_string(cap));
  return log_grid(lo, hi);
}

void check_profile_expectation(const std::string& expect, const RatioProfile& p, Outcome& o) {
  if (expect.empty()) return;
  const ProfileVerdict want = expect == "diverges"   ? ProfileVerdict::Diverges
                              : expect == "vanishes" ? ProfileVerdict::Vanishes
                              : expect == "bounded"  ? ProfileVerdict::Bounded
                                                     : throw ConfigError("--expect must be diverges, vanishes or bounded");
  if (p.verdict != want) o.failures.push_back("expected " + expect + ", profile is " + to_string(p.verdict));
}

void add_prescribe(CLI::App& app, std::vector<Command>& out) {
  auto* sub = app.add_subcommand("prescribe", "Hilbert element with prescribed best-approximation errors");
  auto src = std::make_shared<SeqSource>();
  auto random_len = std::make_shared<std::size_t>(0);
  src->add_options(sub, "Non-increasing errors eps_0..eps_N");
  sub->add_option("--random", *random_len, "Use a seeded random non-increasing sequence of this length instead");
  auto common = add_common(sub);
  out.push_back({sub, common, [src, random_len, common] {
                   Outcome o;
                   std::vector<double> eps;
                   if (*random_len > 0) {
                     if (*random_len > kHilbertCap + 1) throw ConfigError("--random above the budget");
                     std::mt19937_64 rng(common->seed);
                     std::uniform_real_distribution<double> u(0.0, 1.0);
                     eps.resize(*random_len);
                     for (double& e : eps) e = u(rng);
                     std::sort(eps.begin(), eps.end(), std::greater<>{});
                   } else {
                     eps = src->load_raw();
                   }
                   std::vector<double> x;
                   try {
                     x = prescribe_errors(FiniteSeq(eps));
                   } catch (const std::invalid_argument& e) {
                     throw ConfigError(e.what());
                   }
                   const std::size_t N = eps.empty() ? 0 : eps.size() - 1;
                   const FiniteSeq back = error_sequence(x, HilbertScheme{}, N);
                   double err = 0.0;
                   io::CsvTable t({"n", "eps", "error", "x"});
                   for (std::size_t n = 0; n < eps.size(); ++n) {
                     err = std::max(err, std::abs(back[n] - eps[n]));
                     t.add_row({std::to_string(n), num(eps[n]), num(back[n]), num(n < x.size() ? x[n] : 0.0)});
                   }
                   o.result = {{"N", N}, {"x", x}, {"max_roundtrip_error", err}};
                   if (err > 1e-10) o.failures.push_back("round trip error " + num(err));
                   o.profile = t;
                   return o;
                 }});
}

void add_svd(CLI::App& app, std::vector<Command>& out) {
  auto* sub = app.add_subcommand("svd", "Approximation numbers of a matrix by one-sided Jacobi SVD");
  auto path = std::make_shared<std::string>();
  auto random_n = std::make_shared<std::size_t>(0);
  sub->add_option("--matrix", *path, "Matrix from CSV (one row per line) or a JSON array of rows");
  sub->add_option("--random", *random_n, "Seeded random Gaussian n x n matrix instead");
  auto common = add_common(sub);
  out.push_back({sub, common, [path, random_n, common] {
                   Outcome o;
                   Matrix a;
                   if (*random_n > 0) {
                     if (*random_n > kMatrixCap) throw ConfigError("--random above the matrix cap");
                     std::mt19937_64 rng(common->seed);
                     std::normal_distribution<double> g;
                     a = Matrix(*random_n, *random_n);
                     for (std::size_t i = 0; i < a.rows(); ++i)
                       for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = g(rng);
                   } else {
                     if (path->empty()) throw ConfigError("give --matrix or --random");
                     try {
                       a = io::read_matrix(*path);
                     } catch (const std::exception& e) {
                       throw ConfigError(e.what());
                     }
                   }
                   if (a.rows() > kMatrixCap || a.cols() > kMatrixCap) throw ConfigError("matrix above the size cap");
                   if (!a.all_finite()) throw ConfigError("matrix has non-finite entries");
                   const Svd s = jacobi_svd(a);
                   Matrix sig(s.sigma.size(), s.sigma.size());
                   for (std::size_t i = 0; i < s.sigma.size(); ++i) sig(i, i) = s.sigma[i];
                   const Matrix rec = s.U * sig * s.V.transposed();
                   const double scale = std::max(a.frobenius(), 1e-300);
                   const double resid = (a - rec).frobenius() / scale;
                   io::CsvTable t({"n", "a_n"});
                   for (std::size_t i = 0; i < s.sigma.size(); ++i) t.add_row({std::to_string(i + 1), num(s.sigma[i])});
                   o.result = {{"rows", a.rows()},
                               {"cols", a.cols()},
                               {"singular_values", s.sigma},
                               {"sweeps", s.sweeps},
                               {"relative_residual", resid}};
                   if (resid > 1e-10) o.failures.push_back("reconstruction residual " + num(resid));
                   o.profile = t;
                   return o;
                 }});
}

struct PairArgs {
  std::string s1, s2, scheme = "hilbert", expect;
  std::size_t n_min = 10, n_max = 10000;
};

void add_pair_options(CLI::App* sub, PairArgs& a) {
  sub->add_option("--s1", a.s1, "Larger space")->required();
  sub->add_option("--s2", a.s2, "Smaller space")->required();
  sub->add_option("--scheme", a.scheme, "Approximation scheme")->check(CLI::IsMember({"hilbert"}));
  sub->add_option("--Nmin", a.n_min, "Smallest N");
  sub->add_option("--Nmax", a.n_max, "Largest N");
  sub->add_option("--expect", a.expect, "Assert diverges, vanishes or bounded");
}

void add_separate_linear(CLI::App& app, std::vector<Command>& out) {
  auto* sub = app.add_subcommand("separate-linear", "Separation of A(s1) and A(s2) along a witness error profile");
  auto a = std::make_shared<PairArgs>();
  add_pair_options(sub, *a);
  out.push_back({sub, add_common(sub), [a] {
                   Outcome o;
                   const SpaceSpec s1 = spec_arg(a->s1), s2 = spec_arg(a->s2);
                   const HilbertScheme scheme;
                   Separation sep;
                   try {
                     sep = separate_linear(scheme, s1, s2, n_grid(a->n_min, a->n_max, scheme.n_max));
                   } catch (const std::invalid_argument& e) {
                     throw ConfigError(e.what());
                   }
                   o.result = {{"s1", to_json(s1)},
                               {"s2", to_json(s2)},
                               {"profile", to_json(sep.profile)},
                               {"witness", to_json(sep.witness)},
                               {"numerator", to_json(sep.numerator)},
                               {"denominator", to_json(sep.denominator)},
                               {"membership_separated", sep.membership_separated}};
                   check_profile_expectation(a->expect, sep.profile, o);
                   o.profile = ratio_table(sep.profile);
                   return o;
                 }});
}

void add_separate_teo2(CLI::App& app, std::vector<Command>& out) {
  auto* sub = app.add_subcommand("separate-teo2", "Separation from unit-norm elements of A_N with constant errors");
  auto a = std::make_shared<PairArgs>();
  a->n_max = 4096;
  add_pair_options(sub, *a);
  out.push_back({sub, add_common(sub), [a] {
                   Outcome o;
                   const SpaceSpec s1 = spec_arg(a->s1), s2 = spec_arg(a->s2);
                   const HilbertScheme scheme;
                   const auto rep = separate_teo2(scheme, s1, s2, n_grid(a->n_min, a->n_max, scheme.n_max));
                   io::CsvTable t({"N", "ratio", "closed_form", "norm_s1", "norm_s2"});
                   std::size_t broken = 0;
                   for (const auto& p : rep.points) {
                     t.add_row({std::to_string(p.N), num(p.norm_s1 / p.norm_s2), num(p.closed_form), num(p.norm_s1),
                                num(p.norm_s2)});
                     if (!p.inequality_holds) ++broken;
                   }
                   o.result = {{"s1", to_json(s1)},
                               {"s2", to_json(s2)},
                               {"profile", to_json(rep.profile)},
                               {"ones_profile", to_json(rep.ones_profile)},
                               {"gap", rep.gap},
                               {"preconditions_ok", rep.preconditions_ok},
                               {"precondition_failures", rep.precondition_failures},
                               {"inequality_failures", broken}};
                   for (const auto& f : rep.precondition_failures) o.failures.push_back(f);
                   if (broken) o.failures.push_back(std::to_string(broken) + " points violate the norm inequalities");
                   check_profile_expectation(a->expect, rep.profile, o);
                   o.profile = t;
                   return o;
                 }});
}

void add_corbrud(CLI::App& app, std::vector<Command>& out) {
  auto* sub = app.add_subcommand("corbrud", "Convex doubling error profile separating A_q^r from A_p^r");
  struct Args {
    double r = 1.0, p = 1.0, q = 2.0;
    std::size_t N = std::size_t{1} << 14;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--r", a->r, "r > 0");
  sub->add_option("--p", a->p, "p");
  sub->add_option("--q", a->q, "q > p");
  sub->add_option("--N", a->N, "Truncation");
  out.push_back({sub, add_common(sub), [a] {
                   Outcome o;
                   const HilbertScheme scheme;
                   if (a->N > scheme.n_max) throw ConfigError("--N above the budget");
                   CorbrudReport rep;
                   try {
                     rep = corbrud_separation(scheme, a->r, a->p, a->q, a->N);
                   } catch (const std::invalid_argument& e) {
                     throw ConfigError(e.what());
                   }
                   o.result = {{"r", rep.r},
                               {"p", rep.p},
                               {"q", rep.q},
                               {"N", rep.N},
                               {"family", to_json(rep.family)},
                               {"max_roundtrip_error", rep.max_roundtrip_error},
                               {"convex", rep.convex},
                               {"doubling", to_json(rep.doubling)},
                               {"doubling_bound", rep.doubling_bound},
                               {"in_q", to_json(rep.in_q)},
                               {"in_p", to_json(rep.in_p)},
                               {"separated", rep.separated()}};
                   if (rep.max_roundtrip_error > 1e-10) o.failures.push_back("round trip error too large");
                   if (!rep.convex) o.failures.push_back("error sequence not convex");
                   if (!(rep.doubling.sup <= rep.doubling_bound)) o.failures.push_back("doubling constant above 2^r 2^(1/p)");
                   if (!rep.separated()) o.failures.push_back("membership verdicts do not separate");
                   o.profile = partial_norm_table(rep.in_p);
                   return o;
                 }});
}

void add_sandwich(CLI::App& app, std::vector<Command>& out) {
  auto* sub = app.add_subcommand("sandwich", "Diagonal realisation 3 eps_[n/6] >= a_n >= eps_n / 9, projection gaps");
  auto src = std::make_shared<SeqSource>();
  struct Args {
    double C = 0.0;
    std::size_t m = 8;
  };
  auto a = std::make_shared<Args>();
  src->add_options(sub, "Non-increasing eps_0..eps_L");
  sub->add_option("--C", a->C, "Also check seeded oblique projections with norm <= C");
  sub->add_option("--m", a->m, "Dimension for the projection family");
  auto common = add_common(sub);
  out.push_back({sub, common, [src, a, common] {
                   Outcome o;
                   const FiniteSeq eps = src->load();
                   if (!eps.is_non_increasing()) throw ConfigError("eps must be non-increasing");
                   if (eps.size() > kHilbertCap) throw ConfigError("eps above the budget");
                   const auto rep = oikhberg_sandwich_check(eps, canonical_diagonal(eps));
                   io::CsvTable t({"n", "a_n", "upper", "lower"});
                   for (const auto& p : rep.points)
                     t.add_row({std::to_string(p.n), num(p.a_n), num(p.upper), num(p.lower)});
                   o.result = {{"points", rep.points.size()},
                               {"min_upper_margin", rep.min_upper_margin},
                               {"min_lower_margin", rep.min_lower_margin},
                               {"upper_failures", rep.upper_failures},
                               {"lower_failures", rep.lower_failures},
                               {"holds", rep.holds}};
                   if (!rep.holds) o.failures.push_back("sandwich bounds violated");
                   if (a->C > 0.0) {
                     if (a->C < 1.0 || a->m < 2 || a->m > kMatrixCap) throw ConfigError("need C >= 1 and 2 <= m <= cap");
                     std::vector<ProjectionCase> fam;
                     for (std::size_t n = 1; n < a->m; ++n)
                       fam.push_back({n, random_oblique_projection(a->m, n, a->C, common->seed + n)});
                     Json rows = Json::array();
                     for (const auto& g : projection_gap_check(fam, a->C)) {
                       rows.push_back({{"n", g.n},
                                       {"norm", g.norm},
                                       {"a_n", g.a_n},
                                       {"bound", g.bound},
                                       {"margin", g.margin},
                                       {"idempotence", g.idempotence},
                                       {"holds", g.holds}});
                       if (!g.holds) o.failures.push_back("projection gap below 1/C^2 at n = " + std::to_string(g.n));
                     }
                     o.result["projections"] = rows;
                   }
                   o.profile = t;
                   return o;
                 }});
}

}  // namespace

void register_approx_commands(CLI::App& app, std::vector<Command>& out) {
  add_prescribe(app, out);
  add_svd(app, out);
  add_separate_linear(app, out);
  add_separate_teo2(app, out);
  add_corbrud(app, out);
  add_sandwich(app, out);
}

}  // namespace cli
