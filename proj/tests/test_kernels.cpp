#include <doctest.h>
#include <omp.h>

#include <cmath>
#include <stdexcept>
#include <random>
#include <vector>

#include "scalelab/kernels.hpp"

using namespace scalelab::kernels;

namespace {

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("weight matches its formula") {
  const PowerLogWeight w{0.5, 2.0};
  CHECK(w(1) == doctest::Approx(1.0));
  CHECK(w(10) == doctest::Approx(std::pow(10.0, 0.5) * std::pow(1.0 + std::log(10.0), 2.0)).epsilon(1e-14));
}

TEST_CASE("parallel kernels agree with the serial reference") {
  const std::size_t n = 3 * kChunk + 123;
  const auto v = random_values(n, 7);
  for (const PowerLogWeight w : {PowerLogWeight{0.0, 0.0}, PowerLogWeight{1.0, 0.5}, PowerLogWeight{-0.5, 2.0}}) {
    for (double p : {0.5, 1.0, 2.0}) {
      CHECK(rel(parallel::weighted_power_sum(v, w, p), serial::weighted_power_sum(v, w, p)) < 1e-12);
      std::vector<double> a(n), b(n);
      parallel::weighted_power_prefix(v, w, p, a);
      serial::weighted_power_prefix(v, w, p, b);
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, rel(a[i], b[i]));
      CHECK(worst < 1e-12);
    }
    std::vector<double> a(n), b(n);
    parallel::weighted_sup_prefix(v, w, a);
    serial::weighted_sup_prefix(v, w, b);
    CHECK(a == b);
    CHECK(rel(parallel::weight_sum(w, 1, n), serial::weight_sum(w, 1, n)) < 1e-12);
  }
}

TEST_CASE("parallel kernels are bit-identical across thread counts") {
  const std::size_t n = 5 * kChunk + 7;
  const auto v = random_values(n, 11);
  const PowerLogWeight w{0.3, 1.0};
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double s1 = parallel::weighted_power_sum(v, w, 1.5);
  std::vector<double> p1(n);
  parallel::weighted_power_prefix(v, w, 1.5, p1);
  const double ws1 = parallel::weight_sum(w, 1, n);
  omp_set_num_threads(4);
  const double s4 = parallel::weighted_power_sum(v, w, 1.5);
  std::vector<double> p4(n);
  parallel::weighted_power_prefix(v, w, 1.5, p4);
  const double ws4 = parallel::weight_sum(w, 1, n);
  omp_set_num_threads(saved);
  CHECK(s1 == s4);
  CHECK(p1 == p4);
  CHECK(ws1 == ws4);
}

TEST_CASE("prefix ends at the full sum") {
  const auto v = random_values(kChunk + 5, 3);
  const PowerLogWeight w{1.0, 0.0};
  std::vector<double> out(v.size());
  weighted_power_prefix(v, w, 2.0, out);
  CHECK(rel(out.back(), weighted_power_sum(v, w, 2.0)) < 1e-12);
  CHECK(serial::weight_sum(PowerLogWeight{0.0, 0.0}, 1, 10) == doctest::Approx(10.0));
  CHECK(serial::weight_sum(PowerLogWeight{1.0, 0.0}, 1, 9) == doctest::Approx(45.0));
}
