#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "oracles.hpp"
#include "scalelab/approxspace.hpp"

using namespace scalelab;

namespace {

std::vector<double> hilbert_from_errors(std::vector<double> eps) { return prescribe_errors(FiniteSeq(std::move(eps))); }

}  // namespace

TEST_CASE("approx_norm examples") {
  const auto l11 = SpaceSpec::lorentz(1, 1);
  SUBCASE("geometric errors") {
    std::vector<double> eps(60);
    for (std::size_t n = 0; n < eps.size(); ++n) eps[n] = std::ldexp(1.0, -static_cast<int>(n));
    const auto x = hilbert_from_errors(eps);
    const auto v = approx_norm(x, HilbertScheme{}, l11, eps.size() - 1);
    CHECK(v.converged());
    CHECK(v.final_norm() == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("indicator pattern") {
    for (std::size_t N : {1u, 7u, 100u}) {
      std::vector<double> x(N, 0.0);
      x[N - 1] = 1.0;
      const auto v = approx_norm(x, HilbertScheme{}, l11, 4 * N);
      CHECK(v.final_norm() == doctest::Approx(static_cast<double>(N)));
    }
  }
  SUBCASE("boundary power-log errors diverge") {
    const PowerLogFamily f{1.0, 1.0, 1.0, 0.0};
    const std::size_t N = std::size_t{1} << 16;
    const auto eps = f.sequence(N + 1, 0);
    CHECK(power_log_oracle(1.0, 1.0, l11) == Convergence::Diverges);
    const auto v = approx_norm(eps, l11);
    CHECK(v.diverging());
    CHECK(v.rate.model == GrowthModel::LogLog);
  }
  SUBCASE("matrix and diagonal schemes") {
    const auto v = approx_norm(MatrixScheme{Matrix::diagonal({3, 1, 2})}, l11, 5);
    CHECK(v.final_norm() == doctest::Approx(6.0));
    const auto d = approx_norm(DiagonalScheme{FiniteSeq({0.5, 0.25})}, SpaceSpec::lorentz(1, 2), 3);
    CHECK(d.final_norm() == doctest::Approx(0.5 + 2 * 0.25));
  }
}

TEST_CASE("approximation-space quasi-norm axioms") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::vector<SpaceSpec> specs = {SpaceSpec::lorentz(1, 1), SpaceSpec::lorentz(0.5, 1), SpaceSpec::lorentz(2, 0.5),
                                        SpaceSpec::lorentz_zygmund(1, 1, 2), SpaceSpec::lorentz(kInf, 1)};
  for (const auto& s : specs) {
    const double kappa = quasi_triangle_modulus(s);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> x(40), y(40), sum(40);
      for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = u(rng);
        y[i] = u(rng);
        sum[i] = x[i] + y[i];
      }
      const std::size_t N = 45;
      const double nx = approx_norm(x, HilbertScheme{}, s, N).final_norm();
      const double ny = approx_norm(y, HilbertScheme{}, s, N).final_norm();
      const double ns = approx_norm(sum, HilbertScheme{}, s, N).final_norm();
      worst = std::max(worst, ns / (nx + ny));
      std::vector<double> scaled(x);
      for (double& v : scaled) v *= -2.5;
      CHECK(approx_norm(scaled, HilbertScheme{}, s, N).final_norm() == doctest::Approx(2.5 * nx).epsilon(1e-12));
    }
    CAPTURE(s.to_string());
    CHECK(worst <= kappa * (1 + 1e-12));
  }
}

TEST_CASE("separate_linear") {
  const auto l = [](double p, double r) { return SpaceSpec::lorentz(p, r); };
  const auto Ns = log_grid(10, 10000);
  SUBCASE("non-nested specs are rejected") {
    CHECK_THROWS_AS(separate_linear(HilbertScheme{}, l(1, 1), l(2, 1), Ns), std::invalid_argument);
  }
  SUBCASE("equal specs give ratio one") {
    const auto s = separate_linear(HilbertScheme{}, l(1, 1), l(1, 1), Ns);
    for (double r : s.profile.ratios) CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.profile.verdict == ProfileVerdict::Bounded);
  }
  SUBCASE("case (b) orientation separates memberships") {
    const auto s = separate_linear(HilbertScheme{}, l(2, 1), l(1, 1), Ns);
    CHECK(s.membership_separated);
    CHECK(s.numerator.diverging());
    CHECK(s.denominator.converged());
    CHECK(s.profile.ratios.back() > s.profile.ratios.front());
  }
  SUBCASE("case (a) witness diverges") {
    const auto s = separate_linear(HilbertScheme{}, l(1, 1), l(1, 3), Ns);
    CHECK(s.membership_separated);
    CHECK(s.profile.verdict == ProfileVerdict::Diverges);
    CHECK(s.profile.max_ratio() > 1e3);
    CHECK(std::is_sorted(s.profile.ratios.begin(), s.profile.ratios.end()));
  }
  SUBCASE("smoothness gap one still separates") {
    const auto s = separate_linear(HilbertScheme{}, l(1, 1), l(1, 2), Ns);
    CHECK(s.membership_separated);
    CHECK(std::is_sorted(s.profile.ratios.begin(), s.profile.ratios.end()));
  }
}

TEST_CASE("separate_teo2") {
  const auto l = [](double p, double r) { return SpaceSpec::lorentz(p, r); };
  SUBCASE("closed-form ratio (N+1)/2") {
    auto Ns = log_grid(10, 4096);
    Ns.push_back(199);
    std::sort(Ns.begin(), Ns.end());
    Ns.erase(std::unique(Ns.begin(), Ns.end()), Ns.end());
    const auto rep = separate_teo2(HilbertScheme{}, l(1, 2), l(1, 1), Ns);
    CHECK(rep.preconditions_ok);
    CHECK(rep.gap == 1.0);
    for (std::size_t i = 0; i < rep.profile.Ns.size(); ++i) {
      const double N = static_cast<double>(rep.profile.Ns[i]);
      CHECK(rep.profile.ratios[i] == doctest::Approx((N + 1) / 2).epsilon(1e-12));
    }
    const auto at = std::find(rep.profile.Ns.begin(), rep.profile.Ns.end(), 199u) - rep.profile.Ns.begin();
    CHECK(rep.profile.ratios[static_cast<std::size_t>(at)] == doctest::Approx(100.0).epsilon(1e-12));
  }
  SUBCASE("matches the ones-ratio times the gap") {
    const auto Ns = log_grid(10, 4096);
    for (auto [s1, s2] : {std::pair{l(2, 2), l(2, 1)}, std::pair{l(1, 2), l(1, 1)}, std::pair{l(0.5, 1.5), l(0.5, 1)}}) {
      const auto rep = separate_teo2(HilbertScheme{}, s1, s2, Ns);
      for (const auto& pt : rep.points) {
        const double expected = rep.gap * ones_norm(s1, pt.N) / ones_norm(s2, pt.N);
        CHECK(std::abs(pt.norm_s1 / pt.norm_s2 - expected) <= 1e-10 * expected);
        CHECK(std::abs(pt.closed_form - expected) <= 1e-10 * expected);
        CHECK(pt.norm_s1 >= pt.lower_s1 * (1 - 1e-12));
        CHECK(pt.norm_s2 <= pt.upper_s2 * (1 + 1e-12));
        CHECK(pt.inequality_holds);
      }
    }
  }
  SUBCASE("l22 over l21 diverges linearly") {
    const auto rep = separate_teo2(HilbertScheme{}, l(2, 2), l(2, 1), log_grid(10, 4096));
    CHECK(rep.profile.verdict == ProfileVerdict::Diverges);
    CHECK(rep.profile.fitted_rate == doctest::Approx(1.0).epsilon(0.05));
  }
  SUBCASE("equal specs are bounded") {
    const auto rep = separate_teo2(HilbertScheme{}, l(1, 1), l(1, 1), log_grid(10, 4096));
    CHECK(rep.profile.verdict == ProfileVerdict::Bounded);
    CHECK_FALSE(rep.preconditions_ok);
    CHECK_FALSE(rep.precondition_failures.empty());
  }
}

TEST_CASE("corbrud_separation") {
  for (auto [r, p, q] : {std::array{1.0, 1.0, 2.0}, std::array{0.5, 2.0, 4.0}}) {
    CAPTURE(r);
    const auto rep = corbrud_separation(HilbertScheme{}, r, p, q, std::size_t{1} << 14);
    CHECK(rep.max_roundtrip_error <= 1e-10);
    CHECK(rep.convex);
    CHECK(rep.in_q.converged());
    CHECK(rep.in_p.diverging());
    CHECK(rep.in_p.rate.model == GrowthModel::LogLog);
    CHECK(rep.separated());
    CHECK(rep.doubling.sup <= rep.doubling_bound);
    CHECK(rep.doubling_bound == doctest::Approx(std::pow(2.0, r + 1.0 / p)));
    // eps_n / eps_{2n} tends to 2^r from above.
    CHECK(rep.doubling.sup >= std::pow(2.0, r));
  }
  CHECK_THROWS_AS(corbrud_separation(HilbertScheme{}, 1, 2, 2, 1024), std::invalid_argument);
  CHECK_THROWS_AS(corbrud_separation(HilbertScheme{}, 0, 1, 2, 1024), std::invalid_argument);
}

TEST_CASE("Oikhberg sandwich") {
  std::vector<double> geo(40);
  for (std::size_t n = 0; n < geo.size(); ++n) geo[n] = std::ldexp(1.0, -static_cast<int>(n));
  const FiniteSeq eps(geo);
  SUBCASE("canonical diagonal holds") {
    const auto T = canonical_diagonal(eps);
    const auto rep = oikhberg_sandwich_check(eps, T);
    CHECK(rep.holds);
    CHECK(rep.min_upper_margin >= 0.0);
    CHECK(rep.min_lower_margin > 0.0);
    for (const auto& pt : rep.points) CHECK(pt.a_n == eps[pt.n]);
  }
  SUBCASE("scaled diagonals fail per n") {
    const auto big = oikhberg_sandwich_check(eps, DiagonalScheme{canonical_diagonal(eps).d.scaled(20.0)});
    CHECK_FALSE(big.holds);
    CHECK_FALSE(big.upper_failures.empty());
    CHECK(big.upper_failures.front() == 1);
    CHECK(big.lower_failures.empty());
    const auto small = oikhberg_sandwich_check(eps, DiagonalScheme{canonical_diagonal(eps).d.scaled(1.0 / 20)});
    CHECK_FALSE(small.holds);
    CHECK(small.lower_failures.size() == small.points.size());
  }
  SUBCASE("case (b) witness lies in the operator ideal") {
    InclusionCase c;
    c.id = 'b';
    c.p = 1;
    c.q = 2;
    c.r = 1;
    const auto fam = c.witness();
    const auto e = fam.sequence(4096, 1);
    const auto rep = oikhberg_sandwich_check(e, canonical_diagonal(e));
    CHECK(rep.holds);
    CHECK(power_log_oracle(fam.beta, fam.delta, c.big()) == Convergence::Converges);
    CHECK(power_log_oracle(fam.beta, fam.delta, c.small()) == Convergence::Diverges);
  }
}

TEST_CASE("dilation preserves membership") {
  struct Row {
    double beta, delta;
  };
  const std::vector<Row> fams = {{2, 0}, {0.5, 0}, {1.5, 0}, {0.25, 0}, {1, 3}};
  const std::vector<SpaceSpec> specs = {SpaceSpec::lorentz(1, 1), SpaceSpec::lorentz(2, 1), SpaceSpec::lorentz(1, 0.5)};
  const std::size_t len = std::size_t{1} << 14;
  for (const auto& f : fams) {
    const auto seq = PowerLogFamily{f.beta, f.delta}.sequence(len);
    for (double C : {1.5, 3.0, 6.0}) {
      const auto d = dilate(seq, C);
      for (const auto& s : specs) {
        CAPTURE(f.beta);
        CAPTURE(C);
        CAPTURE(s.to_string());
        const auto oracle = power_log_oracle(f.beta, f.delta, s);
        const auto v = truncated_norms(d, s);
        CHECK(v.status != VerdictStatus::Inconclusive);
        CHECK(v.converged() == (oracle == Convergence::Converges));
        CHECK(truncated_norms(seq, s).converged() == v.converged());
      }
    }
  }
}
