#include "scalelab/ratio_profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scalelab/verdict.hpp"

namespace scalelab {

double RatioProfile::max_ratio() const {
  return ratios.empty() ? std::numeric_limits<double>::quiet_NaN() : *std::max_element(ratios.begin(), ratios.end());
}

double RatioProfile::min_ratio() const {
  return ratios.empty() ? std::numeric_limits<double>::quiet_NaN() : *std::min_element(ratios.begin(), ratios.end());
}

const char* to_string(ProfileVerdict v) noexcept {
  switch (v) {
    case ProfileVerdict::Diverges: return "diverges";
    case ProfileVerdict::Vanishes: return "vanishes";
    case ProfileVerdict::Bounded: return "bounded";
    case ProfileVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

void classify_profile(RatioProfile& profile, const ProfilePolicy& policy) {
  if (profile.Ns.size() != profile.ratios.size()) throw std::invalid_argument("RatioProfile: length mismatch");
  profile.verdict = ProfileVerdict::Inconclusive;
  profile.fitted_rate = std::numeric_limits<double>::quiet_NaN();
  if (profile.Ns.size() < 2) {
    profile.rule = "too-few-points";
    return;
  }
  const double top = static_cast<double>(profile.Ns.back());
  std::vector<double> x, y;
  for (std::size_t i = 0; i < profile.Ns.size(); ++i) {
    const double n = static_cast<double>(profile.Ns[i]);
    if (n < top / 10.0 || !(profile.ratios[i] > 0.0)) continue;
    x.push_back(std::log(n));
    y.push_back(std::log(profile.ratios[i]));
  }
  if (x.size() < 2) {
    x.clear();
    y.clear();
    for (std::size_t i = 0; i < profile.Ns.size(); ++i) {
      if (!(profile.ratios[i] > 0.0)) continue;
      x.push_back(std::log(static_cast<double>(profile.Ns[i])));
      y.push_back(std::log(profile.ratios[i]));
    }
  }
  if (x.size() < 2) {
    profile.rule = "too-few-positive-points";
    return;
  }
  const double slope = fit_slope(x, y);
  profile.fitted_rate = slope;
  const double pred = profile.predicted_rate;
  const bool rate_ok = std::isnan(pred) || std::abs(slope - pred) <= policy.rate_rel_tol * std::abs(pred);

  if (slope > 0.0 && profile.max_ratio() > policy.diverge_threshold) {
    if (rate_ok) {
      profile.verdict = ProfileVerdict::Diverges;
      profile.rule = "threshold+slope";
    } else {
      profile.rule = "slope-mismatch";
    }
    return;
  }
  if (slope < 0.0 && profile.min_ratio() < policy.vanish_threshold) {
    if (rate_ok) {
      profile.verdict = ProfileVerdict::Vanishes;
      profile.rule = "threshold+slope";
    } else {
      profile.rule = "slope-mismatch";
    }
    return;
  }
  if (std::abs(slope) <= policy.bounded_slope) {
    profile.verdict = ProfileVerdict::Bounded;
    profile.rule = "flat-slope";
    return;
  }
  profile.rule = "below-threshold";
}

std::vector<std::size_t> log_grid(std::size_t lo, std::size_t hi, std::size_t per_decade) {
  if (lo == 0 || hi < lo || per_decade == 0) throw std::invalid_argument("log_grid: need 1 <= lo <= hi");
  std::vector<std::size_t> out;
  const double a = std::log10(static_cast<double>(lo));
  const double b = std::log10(static_cast<double>(hi));
  const auto steps = static_cast<std::size_t>(std::ceil((b - a) * static_cast<double>(per_decade)));
  for (std::size_t i = 0; i <= steps; ++i) {
    const double e = steps == 0 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(steps);
    auto n = static_cast<std::size_t>(std::llround(std::pow(10.0, e)));
    n = std::clamp(n, lo, hi);
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  if (out.back() != hi) out.push_back(hi);
  return out;
}

}  // namespace scalelab
