#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace scalelab {

enum class ProfileVerdict { Diverges, Vanishes, Bounded, Inconclusive };

/// Norm ratios indexed by truncation N with a verdict and fitted log-log rate.
struct RatioProfile {
  std::vector<std::size_t> Ns;
  std::vector<double> ratios;
  ProfileVerdict verdict = ProfileVerdict::Inconclusive;
  double fitted_rate = std::numeric_limits<double>::quiet_NaN();
  double predicted_rate = std::numeric_limits<double>::quiet_NaN();
  std::string rule;

  double max_ratio() const;
  double min_ratio() const;
};

struct ProfilePolicy {
  double diverge_threshold = 1e3;  ///< max ratio must exceed this to diverge
  double vanish_threshold = 1e-3;  ///< min ratio must fall below this to vanish
  double rate_rel_tol = 0.05;      ///< fitted vs predicted exponent
  double bounded_slope = 0.01;     ///< |slope| below this reads as bounded
};

const char* to_string(ProfileVerdict v) noexcept;

/// Fits the log-log slope over the last decade of Ns and sets verdict and
/// rule. predicted_rate (NaN if unknown) must be matched within rate_rel_tol
/// for a Diverges / Vanishes verdict.
void classify_profile(RatioProfile& profile, const ProfilePolicy& policy = {});

/// Log-spaced grid of distinct integers in [lo, hi], always containing hi.
std::vector<std::size_t> log_grid(std::size_t lo, std::size_t hi, std::size_t per_decade = 8);

}  // namespace scalelab
