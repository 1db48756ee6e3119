#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <numbers>

#include "scalelab/kernels.hpp"
#include "scalelab/scales.hpp"
#include "scalelab/seqspace.hpp"

using namespace scalelab;

TEST_CASE("parse_spec and to_string") {
  const auto a = parse_spec("l:2:1");
  CHECK(a.kind == SpaceKind::Lorentz);
  CHECK(a.p == 2.0);
  CHECK(a.r == 1.0);
  const auto b = parse_spec("lz:inf:0.5:3");
  CHECK(b.p_infinite());
  CHECK(b.gamma == 3.0);
  CHECK(parse_spec(b.to_string()) == b);
  CHECK(parse_spec(a.to_string()) == a);
  CHECK_THROWS_AS(parse_spec("l:0:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_spec("l:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_spec("lz:1:1:-1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_spec("q:1:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_spec("l:1:0"), std::invalid_argument);
}

TEST_CASE("containment lattice") {
  const auto l = [](double p, double r) { return SpaceSpec::lorentz(p, r); };
  const auto lz = [](double p, double r, double g) { return SpaceSpec::lorentz_zygmund(p, r, g); };
  CHECK(is_strictly_contained(l(1, 2), l(1, 1)));
  CHECK(is_strictly_contained(l(5, 2), l(1, 1)));
  CHECK(is_strictly_contained(l(1, 1), l(2, 1)));
  CHECK(is_strictly_contained(l(2, 1), l(kInf, 1)));
  CHECK_FALSE(is_contained(l(2, 1), l(1, 1)));
  CHECK(is_strictly_contained(lz(1, 1, 3), lz(1, 1, 1)));
  CHECK(is_strictly_contained(lz(1, 1, 2), lz(2, 1, 2)));
  CHECK_FALSE(is_strictly_contained(l(1, 1), l(1, 1)));
  CHECK(is_contained(l(1, 1), l(1, 1)));
}

TEST_CASE("power_log_oracle") {
  const auto l11 = SpaceSpec::lorentz(1, 1);
  CHECK(power_log_oracle(2, 0, l11) == Convergence::Converges);
  CHECK(power_log_oracle(1, 1, l11) == Convergence::Diverges);
  CHECK(power_log_oracle(1, 1.0001, l11) == Convergence::Converges);
  for (double p : {0.5, 1.0, 3.0})
    for (double r : {0.5, 1.0, 2.0}) CHECK(power_log_oracle(r, 0, SpaceSpec::lorentz(p, r)) == Convergence::Diverges);
  CHECK(power_log_oracle(1, 0, SpaceSpec::lorentz(kInf, 1)) == Convergence::Converges);
  CHECK(power_log_oracle(1, 0.5, SpaceSpec::lorentz_zygmund(kInf, 1, 1)) == Convergence::Diverges);
}

TEST_CASE("power_log_oracle agrees with truncated norms") {
  // Away from the boundary the numeric verdict must match the oracle.
  struct Row {
    double beta, delta;
    SpaceSpec spec;
  };
  const std::vector<Row> rows = {
      {2, 0, SpaceSpec::lorentz(1, 1)},     {1, 0, SpaceSpec::lorentz(1, 1)},   {1, 2, SpaceSpec::lorentz(1, 1)},
      {1, 1, SpaceSpec::lorentz(1, 1)},     {1, 1, SpaceSpec::lorentz(2, 1)},   {0.5, 0, SpaceSpec::lorentz(2, 1)},
      {1.5, 0, SpaceSpec::lorentz(2, 1)},   {1, 0, SpaceSpec::lorentz(kInf, 1)}, {0.5, 0, SpaceSpec::lorentz(kInf, 1)},
      {1, 3, SpaceSpec::lorentz_zygmund(1, 1, 1)}, {1, 1.5, SpaceSpec::lorentz_zygmund(1, 1, 1)},
  };
  for (const auto& row : rows) {
    CAPTURE(row.beta);
    CAPTURE(row.delta);
    CAPTURE(row.spec.to_string());
    const auto v = truncated_norms(PowerLogFamily{row.beta, row.delta}.sequence(1 << 20), row.spec);
    const bool conv = power_log_oracle(row.beta, row.delta, row.spec) == Convergence::Converges;
    CHECK(v.status != VerdictStatus::Inconclusive);
    CHECK(v.converged() == conv);
  }
}

TEST_CASE("PowerLogFamily") {
  const PowerLogFamily f{1.0, 0.5, 0.0, 2.0};
  CHECK(f.value(1) == doctest::Approx(1.0));
  CHECK(f.value(4) == doctest::Approx(0.25 / std::sqrt(3.0)));
  CHECK(PowerLogFamily{1.5, 0, 1}.value(0) == doctest::Approx(1.0));
  CHECK_THROWS_AS((PowerLogFamily{1, 0}.value(0)), std::invalid_argument);
  const auto s = PowerLogFamily{2, 0}.sequence(3);
  CHECK(s[2] == doctest::Approx(1.0 / 9.0));
}

TEST_CASE("witness examples") {
  SUBCASE("case a") {
    InclusionCase c{'a', 1, 1, 1, 1, 0, 0};
    const auto w = c.witness();
    CHECK(w.beta == doctest::Approx(1.5));
    CHECK(w.delta == 0.0);
    const auto rep = witness_sequence(c, 1 << 18);
    CHECK(rep.in_space == SpaceSpec::lorentz(1, 1));
    CHECK(rep.not_in_space == SpaceSpec::lorentz(1, 2));
    CHECK(rep.certified());
  }
  SUBCASE("case b uses delta = 1/p") {
    InclusionCase c{'b', 1, 2, 1, 0, 0, 0};
    const auto w = c.witness();
    CHECK(w.beta == doctest::Approx(1.0));
    CHECK(w.delta == doctest::Approx(1.0));
    const auto rep = witness_sequence(c);
    CHECK(rep.oracle_in == Convergence::Converges);
    CHECK(rep.oracle_out == Convergence::Diverges);
    CHECK(rep.certified());
    // The printed exponent 1/q would diverge in the bigger space as well.
    CHECK(power_log_oracle(1.0, 0.5, SpaceSpec::lorentz(2, 1)) == Convergence::Diverges);
  }
  SUBCASE("case e") {
    InclusionCase c{'e', 1, 1, 1, 0, 3, 1};
    const auto w = c.witness();
    CHECK(w.beta == doctest::Approx(1.0));
    CHECK(w.delta == doctest::Approx(3.0));
    const auto rep = witness_sequence(c);
    CHECK(rep.in_space == SpaceSpec::lorentz_zygmund(1, 1, 1));
    CHECK(rep.not_in_space == SpaceSpec::lorentz_zygmund(1, 1, 3));
    CHECK(rep.certified());
  }
  SUBCASE("invalid cases are rejected") {
    CHECK_THROWS_AS((InclusionCase{'b', 2, 1, 1, 0, 0, 0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((InclusionCase{'e', 1, 1, 1, 0, 1, 3}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((InclusionCase{'a', 1, 1, 1, 0, 0, 0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((InclusionCase{'z', 1, 1, 1, 1, 0, 0}.validate()), std::invalid_argument);
  }
  SUBCASE("certify_witness fails loudly on contradictions") {
    CHECK_THROWS_AS(certify_witness(PowerLogFamily{2, 0}, SpaceSpec::lorentz(1, 1), SpaceSpec::lorentz(1, 1.5), 1024),
                    std::logic_error);
  }
}

TEST_CASE("find_witness") {
  const auto w = find_witness(SpaceSpec::lorentz(1, 3), SpaceSpec::lorentz(1, 1));
  REQUIRE(w);
  CHECK(w->beta == doctest::Approx(2.0));
  CHECK_FALSE(find_witness(SpaceSpec::lorentz(2, 1), SpaceSpec::lorentz(1, 1)));
  CHECK_FALSE(find_witness(SpaceSpec::lorentz(1, 1), SpaceSpec::lorentz(1, 1)));
  const auto b = find_witness(SpaceSpec::lorentz(1, 1), SpaceSpec::lorentz(2, 1));
  REQUIRE(b);
  CHECK(power_log_oracle(b->beta, b->delta, SpaceSpec::lorentz(2, 1)) == Convergence::Converges);
  CHECK(power_log_oracle(b->beta, b->delta, SpaceSpec::lorentz(1, 1)) == Convergence::Diverges);
}

TEST_CASE("ones_norm") {
  CHECK(ones_norm(SpaceSpec::lorentz(1, 1), 7) == doctest::Approx(7.0));
  CHECK(ones_norm(SpaceSpec::lorentz(1, 2), 9) == doctest::Approx(45.0));
  CHECK(ones_norm(SpaceSpec::lorentz(2, 1), 4) == doctest::Approx(std::sqrt(10.0)));
  CHECK(ones_norm(SpaceSpec::lorentz(kInf, 0.5), 16) == doctest::Approx(4.0));
  for (std::size_t N : {1u, 5u, 100u}) {
    for (const auto& s : {SpaceSpec::lorentz(0.5, 2), SpaceSpec::lorentz_zygmund(2, 1, 1)}) {
      CHECK(ones_norm(s, N) == doctest::Approx(norm(FiniteSeq(std::vector<double>(N, 1.0)), s)).epsilon(1e-12));
    }
  }
}

TEST_CASE("ones ratio three-case law") {
  const auto Ns = log_grid(10, 100000);
  SUBCASE("r1 > r2 diverges with exact ratio (N+1)/2") {
    const auto p = ones_ratio_profile(SpaceSpec::lorentz(1, 2), SpaceSpec::lorentz(1, 1), Ns);
    CHECK(p.verdict == ProfileVerdict::Diverges);
    CHECK(ones_norm(SpaceSpec::lorentz(1, 2), 9) / ones_norm(SpaceSpec::lorentz(1, 1), 9) == doctest::Approx(5.0));
  }
  SUBCASE("r1 < r2 vanishes") {
    CHECK(ones_ratio_profile(SpaceSpec::lorentz(1, 1), SpaceSpec::lorentz(1, 2), Ns).verdict == ProfileVerdict::Vanishes);
  }
  SUBCASE("equal specs give ratio 1") {
    const auto p = ones_ratio_profile(SpaceSpec::lorentz(2, 1), SpaceSpec::lorentz(2, 1), Ns);
    CHECK(p.verdict == ProfileVerdict::Bounded);
    for (double r : p.ratios) CHECK(r == 1.0);
  }
  SUBCASE("equal r converges to the closed-form limit") {
    // ||1_N||_{1,1} / ||1_N||_{2,1} = N / sqrt(N(N+1)/2) -> sqrt 2, and the
    // reversed quotient tends to 1/sqrt 2.
    const auto p = ones_ratio_profile(SpaceSpec::lorentz(1, 1), SpaceSpec::lorentz(2, 1), Ns);
    CHECK(p.verdict == ProfileVerdict::Bounded);
    CHECK(ones_ratio_limit(SpaceSpec::lorentz(1, 1), SpaceSpec::lorentz(2, 1)) == doctest::Approx(std::sqrt(2.0)));
    CHECK(p.ratios.back() == doctest::Approx(std::sqrt(2.0)).epsilon(0.01));
    const auto q = ones_ratio_profile(SpaceSpec::lorentz(2, 1), SpaceSpec::lorentz(1, 1), Ns);
    CHECK(q.ratios.back() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.01));
    CHECK(ones_ratio_limit(SpaceSpec::lorentz(2, 1), SpaceSpec::lorentz(1, 1)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  }
}

TEST_CASE("Riemann-sum ratio") {
  CHECK(polya_szego_ratio(1, 100) == doctest::Approx(0.505));
  CHECK(polya_szego_ratio(0, 10) == doctest::Approx(1.0));
  CHECK(polya_szego_ratio(-0.5, 10000) == doctest::Approx(1.985).epsilon(1e-3));
  CHECK(std::abs(polya_szego_ratio(-0.5, 10000) - 2.0) < 0.02);
  CHECK_THROWS_AS(polya_szego_ratio(-1, 10), std::invalid_argument);
  CHECK_THROWS_AS(polya_szego_ratio(1, 0), std::invalid_argument);
  for (double alpha : {-0.5, 1.0, 2.5}) {
    double prev = 1e300;
    for (std::size_t N : {10u, 100u, 1000u, 10000u, 100000u}) {
      const double err = std::abs(polya_szego_ratio(alpha, N) - 1.0 / (alpha + 1.0));
      CHECK(err < prev);
      prev = err;
    }
  }
}

TEST_CASE("convexity") {
  CHECK(convexity_check(PowerLogFamily{1, 0}.sequence(1000)));
  CHECK(convexity_check(PowerLogFamily{1, 0.5, 0, 2}.sequence(10000)));
  CHECK_FALSE(convexity_check(FiniteSeq({1, 0.2, 0.19, 0.185, 0.1})));
  CHECK_FALSE(convexity_check(FiniteSeq({1, 2})));
}

TEST_CASE("doubling") {
  const auto a = doubling_check(PowerLogFamily{1, 0}, 1000);
  CHECK(a.sup == doctest::Approx(2.0));
  CHECK(a.bounded);
  const auto b = doubling_check(PowerLogFamily{1, 0.5, 0, 2}, 1 << 14);
  CHECK(b.sup <= 2.0 * std::sqrt(2.0) * (1 + 1e-12));
  CHECK(b.bounded);
  const PowerLogFamily f{1, 0.5, 0, 2};
  // eps_n / eps_{2n} = 2 ((1 + log2 2n) / (1 + log2 n))^{1/2}
  CHECK(f.value(1 << 13) / f.value(1 << 14) == doctest::Approx(2.0 * std::sqrt(15.0 / 14.0)).epsilon(1e-12));
  const auto g = doubling_check([](double n) { return -n * std::numbers::ln2; }, 64);
  CHECK_FALSE(g.bounded);
  CHECK(g.sup == doctest::Approx(std::exp2(64.0)));
}

TEST_CASE("ratio profile classification") {
  RatioProfile p;
  p.Ns = log_grid(10, 10000);
  for (auto N : p.Ns) p.ratios.push_back(std::sqrt(double(N)));
  p.predicted_rate = 0.5;
  classify_profile(p);
  CHECK(p.verdict == ProfileVerdict::Inconclusive);  // 100 < 10^3
  p.ratios.clear();
  for (auto N : p.Ns) p.ratios.push_back(double(N));
  p.predicted_rate = 1.0;
  classify_profile(p);
  CHECK(p.verdict == ProfileVerdict::Diverges);
  p.predicted_rate = 2.0;
  classify_profile(p);
  CHECK(p.verdict == ProfileVerdict::Inconclusive);
  const auto g = log_grid(1, 1000);
  CHECK(g.front() == 1);
  CHECK(g.back() == 1000);
  CHECK(std::adjacent_find(g.begin(), g.end()) == g.end());
}

TEST_CASE("ones_norm past the direct-sum range") {
  const std::size_t N = 3 * (std::size_t{1} << 20) + 17;
  for (const auto& s : {SpaceSpec::lorentz(1, 1), SpaceSpec::lorentz(2, 1.5), SpaceSpec::lorentz(0.5, 0.5),
                        SpaceSpec::lorentz(4, 0.1), SpaceSpec::lorentz_zygmund(1, 1, 2),
                        SpaceSpec::lorentz_zygmund(2, 0.25, 3)}) {
    CAPTURE(s.to_string());
    const double direct = std::pow(kernels::serial::weight_sum(weight_of(s), 1, N), 1.0 / s.p);
    CHECK(ones_norm(s, N) == doctest::Approx(direct).epsilon(1e-12));
  }
  CHECK(ones_norm(SpaceSpec::lorentz(1, 1), 5000000000ull) == doctest::Approx(5e9).epsilon(1e-14));
  // The profile shares partial sums between grid points; it must agree with
  // pointwise evaluation on grids crossing the direct-sum range.
  const auto s1 = SpaceSpec::lorentz(0.5, 0.5), s2 = SpaceSpec::lorentz(1, 1);
  std::vector<std::size_t> Ns = log_grid(10, 100000000);
  std::reverse(Ns.begin(), Ns.end());
  const auto prof = ones_ratio_profile(s1, s2, Ns);
  for (std::size_t i = 0; i < Ns.size(); ++i)
    CHECK(prof.ratios[i] == doctest::Approx(ones_norm(s1, Ns[i]) / ones_norm(s2, Ns[i])).epsilon(1e-13));
  CHECK(ones_norm(SpaceSpec::lorentz(1, 2), 100000000ull) == doctest::Approx(1e8 * (1e8 + 1) / 2).epsilon(1e-14));
}
