#include "scalelab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace scalelab::kernels::parallel {

namespace {

inline double term(double v, double weight, double p) {
  if (v == 0.0) return 0.0;
  return weight * (p == 1.0 ? v : std::pow(v, p));
}

inline std::size_t chunk_count(std::size_t n) { return (n + kChunk - 1) / kChunk; }

}  // namespace

double weighted_power_sum(std::span<const double> v, PowerLogWeight w, double p) {
  const std::size_t n = v.size();
  const std::size_t chunks = chunk_count(n);
  std::vector<double> partial(chunks, 0.0);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(n, lo + kChunk);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += term(v[i], w(i + 1), p);
    partial[static_cast<std::size_t>(c)] = s;
  }

  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

void weighted_power_prefix(std::span<const double> v, PowerLogWeight w, double p, std::span<double> out) {
  const std::size_t n = v.size();
  const std::size_t chunks = chunk_count(n);
  std::vector<double> chunk_sum(chunks, 0.0);

  // Pass 1: local scans.
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(n, lo + kChunk);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      s += term(v[i], w(i + 1), p);
      out[i] = s;
    }
    chunk_sum[static_cast<std::size_t>(c)] = s;
  }

  // Chunk offsets, serially in index order.
  std::vector<double> offset(chunks, 0.0);
  for (std::size_t c = 1; c < chunks; ++c) offset[c] = offset[c - 1] + chunk_sum[c - 1];

  // Pass 2: shift.
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 1; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(n, lo + kChunk);
    const double off = offset[static_cast<std::size_t>(c)];
    for (std::size_t i = lo; i < hi; ++i) out[i] += off;
  }
}

void weighted_sup_prefix(std::span<const double> v, PowerLogWeight w, std::span<double> out) {
  const std::size_t n = v.size();
  const std::size_t chunks = chunk_count(n);
  std::vector<double> chunk_max(chunks, 0.0);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(n, lo + kChunk);
    double m = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      if (v[i] != 0.0) m = std::max(m, w(i + 1) * v[i]);
      out[i] = m;
    }
    chunk_max[static_cast<std::size_t>(c)] = m;
  }

  std::vector<double> carry(chunks, 0.0);
  for (std::size_t c = 1; c < chunks; ++c) carry[c] = std::max(carry[c - 1], chunk_max[c - 1]);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 1; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(n, lo + kChunk);
    const double m = carry[static_cast<std::size_t>(c)];
    for (std::size_t i = lo; i < hi; ++i) out[i] = std::max(out[i], m);
  }
}

double weight_sum(PowerLogWeight w, std::size_t first, std::size_t last) {
  if (last < first) return 0.0;
  const std::size_t n = last - first + 1;
  const std::size_t chunks = chunk_count(n);
  std::vector<double> partial(chunks, 0.0);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
    const std::size_t lo = first + static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(last + 1, lo + kChunk);
    double s = 0.0;
    for (std::size_t k = lo; k < hi; ++k) s += w(k);
    partial[static_cast<std::size_t>(c)] = s;
  }

  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

}  // namespace scalelab::kernels::parallel
