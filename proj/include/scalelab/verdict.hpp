#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace scalelab {

enum class VerdictStatus { ConvergedBy, DivergingWithRate, Inconclusive };

/// Shape of the growth of a diverging truncated norm.
///   Power    : norm ~ N^exponent
///   LogPower : norm ~ (log N)^exponent
///   LogLog   : norm^p ~ exponent * log log N
enum class GrowthModel { None, Power, LogPower, LogLog };

struct GrowthRate {
  GrowthModel model = GrowthModel::None;
  double exponent = 0.0;
};

/// Numbers the verdict was read from. NaN marks a statistic that could not be
/// computed for the given input (too short, all zero).
struct VerdictEvidence {
  double relative_increment = 0.0;  ///< (norm_N - norm_{3N/4}) / norm_N
  double block_exponent = 0.0;      ///< mean local log-exponent s of block sums
  double block_trend = 0.0;         ///< change of s per block over the window
  double loglog_slope = 0.0;        ///< d log norm / d log N over the last decade
  std::size_t blocks = 0;           ///< complete dyadic blocks available
  std::string rule;                 ///< which test decided
};

/// Thresholds for membership verdicts.
///
/// A truncated norm is ConvergedBy when its relative increase over the last
/// tail_fraction of indices is below converge_rel_tol. Otherwise the dyadic
/// block sums B_k are examined through their local exponent
///   s_k = -d log B_k / d log L_k,   L_k = 1 + log(block midpoint),
/// which tends to +inf for power decay, to a constant s for
/// n^{-1}(log n)^{-s}-type terms and to -inf for power growth. The series
/// converges iff the eventual s exceeds 1. A power factor n^{-x} makes s grow
/// linearly, by about x log 2 per block, so a trend above power_trend_min
/// decides even while s is still small (and the mirror image for growth).
/// A falling s above block_converge_min still reads as convergent when its
/// trend, extended over as many blocks again as were seen, keeps it there.
struct VerdictPolicy {
  double converge_rel_tol = 1e-6;
  double tail_fraction = 0.25;
  double loglog_slope_min = 0.01;
  double block_converge_min = 1.1;
  double block_diverge_max = 1.05;
  double block_trend_max = 0.01;
  double block_trend_min = -0.05;
  double log_exponent_min = 0.02;
  double power_trend_min = 0.1;
  std::size_t window = 3;
  std::size_t min_blocks = 6;
};

struct MembershipVerdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  std::size_t converged_by = 0;  ///< meaningful for ConvergedBy
  GrowthRate rate;               ///< meaningful for DivergingWithRate
  std::vector<double> partial_norms;
  VerdictEvidence evidence;

  bool converged() const noexcept { return status == VerdictStatus::ConvergedBy; }
  bool diverging() const noexcept { return status == VerdictStatus::DivergingWithRate; }
  double final_norm() const noexcept { return partial_norms.empty() ? 0.0 : partial_norms.back(); }
};

const char* to_string(VerdictStatus s) noexcept;
const char* to_string(GrowthModel m) noexcept;

/// Classifies a sum-form truncated quasi-norm.
///
/// power_prefix[i] is the p-th power sum over the first i+1 terms (the norm
/// is its 1/p-th power). log_scale[i] is the logarithmic position of index i
/// (log(i+1) for sequences, k log 2 for dyadic K-functional samples). Level
/// terms are grouped into blocks of equal log_scale width log 2.
MembershipVerdict classify_sum(std::span<const double> power_prefix, std::span<const double> log_scale, double p,
                               const VerdictPolicy& policy = {});

/// Classifies a sup-form truncated quasi-norm (p = infinity); prefix_sup[i]
/// is the running maximum over the first i+1 terms.
MembershipVerdict classify_sup(std::span<const double> prefix_sup, std::span<const double> log_scale,
                               const VerdictPolicy& policy = {});

/// log(i+1) for i = 0..n-1.
std::vector<double> sequence_log_scale(std::size_t n);

/// Least-squares slope of y on x.
double fit_slope(std::span<const double> x, std::span<const double> y);

}  // namespace scalelab
