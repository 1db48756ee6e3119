#pragma once

// Reduction kernels behind every norm in the library.
//
// Each kernel has a plain serial reference and an OpenMP version. The OpenMP
// versions split the index range into fixed-size chunks whose boundaries do
// not depend on the thread count, reduce each chunk serially, and combine
// chunk results in index order. Their output is therefore bit-identical for
// any number of threads, though it may differ from the serial reference in
// the last few ulps.

#include <cstddef>
#include <span>

namespace scalelab::kernels {

/// Weight w_n = n^power * (1 + ln n)^log_power for the 1-based index n.
struct PowerLogWeight {
  double power = 0.0;
  double log_power = 0.0;

  double operator()(std::size_t n) const noexcept;
};

inline constexpr std::size_t kChunk = std::size_t{1} << 14;

namespace serial {

/// sum_{i} w_{i+1} * v[i]^p
double weighted_power_sum(std::span<const double> v, PowerLogWeight w, double p);

/// out[i] = sum_{j <= i} w_{j+1} * v[j]^p
void weighted_power_prefix(std::span<const double> v, PowerLogWeight w, double p, std::span<double> out);

/// out[i] = max_{j <= i} w_{j+1} * v[j]
void weighted_sup_prefix(std::span<const double> v, PowerLogWeight w, std::span<double> out);

/// sum_{n=first}^{last} w_n (no values; used for indicator sequences)
double weight_sum(PowerLogWeight w, std::size_t first, std::size_t last);

}  // namespace serial

namespace parallel {

double weighted_power_sum(std::span<const double> v, PowerLogWeight w, double p);
void weighted_power_prefix(std::span<const double> v, PowerLogWeight w, double p, std::span<double> out);
void weighted_sup_prefix(std::span<const double> v, PowerLogWeight w, std::span<double> out);
double weight_sum(PowerLogWeight w, std::size_t first, std::size_t last);

}  // namespace parallel

// Dispatch used by the library: the OpenMP kernel for long inputs, the serial
// one below a chunk. Both branches are deterministic.
double weighted_power_sum(std::span<const double> v, PowerLogWeight w, double p);
void weighted_power_prefix(std::span<const double> v, PowerLogWeight w, double p, std::span<double> out);
void weighted_sup_prefix(std::span<const double> v, PowerLogWeight w, std::span<double> out);
double weight_sum(PowerLogWeight w, std::size_t first, std::size_t last);

}  // namespace scalelab::kernels
