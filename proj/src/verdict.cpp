#include "scalelab/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace scalelab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kLn2 = std::numbers::ln2;
constexpr double kLn10 = std::numbers::ln10;

struct Block {
  double sum = 0.0;
  double level = 0.0;  // 1 + log-scale of the block midpoint
};

// Sum-form blocks: indices grouped by floor(log_scale / log 2). The last
// block is dropped because it may be partial.
std::vector<Block> make_blocks(std::span<const double> prefix, std::span<const double> log_scale) {
  std::vector<Block> blocks;
  const std::size_t n = prefix.size();
  std::size_t start = 0;
  double before = 0.0;
  while (start < n) {
    const auto k = static_cast<long>(std::floor(log_scale[start] / kLn2 + 1e-9));
    std::size_t end = start;
    while (end + 1 < n && static_cast<long>(std::floor(log_scale[end + 1] / kLn2 + 1e-9)) == k) ++end;
    if (end + 1 >= n) break;  // partial tail block
    Block b;
    b.sum = prefix[end] - before;
    b.level = 1.0 + 0.5 * (log_scale[start] + log_scale[end]);
    blocks.push_back(b);
    before = prefix[end];
    start = end + 1;
  }
  return blocks;
}

// Indices in the last decade of log_scale, thinned to at most ~256 points.
std::vector<std::size_t> last_decade(std::span<const double> log_scale) {
  std::vector<std::size_t> idx;
  if (log_scale.empty()) return idx;
  const double hi = log_scale.back();
  const double lo = hi - kLn10;
  std::size_t first = 0;
  while (first < log_scale.size() && log_scale[first] < lo) ++first;
  const std::size_t count = log_scale.size() - first;
  const std::size_t stride = std::max<std::size_t>(1, count / 256);
  for (std::size_t i = first; i < log_scale.size(); i += stride) idx.push_back(i);
  if (idx.back() != log_scale.size() - 1) idx.push_back(log_scale.size() - 1);
  return idx;
}

double sse_of_fit(std::span<const double> x, std::span<const double> y) {
  const double b = fit_slope(x, y);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (my + b * (x[i] - mx));
    sse += r * r;
  }
  return sse;
}

std::size_t first_within(std::span<const double> partial, double tol) {
  const double last = partial.back();
  for (std::size_t i = 0; i < partial.size(); ++i) {
    if (last - partial[i] <= tol * last) return i + 1;
  }
  return partial.size();
}

double relative_increment(std::span<const double> partial, double tail_fraction) {
  const double last = partial.back();
  if (last == 0.0) return 0.0;
  const auto m = partial.size();
  const auto cut = static_cast<std::size_t>(std::floor((1.0 - tail_fraction) * static_cast<double>(m)));
  const std::size_t i = cut == 0 ? 0 : cut - 1;
  return (last - partial[i]) / last;
}

double loglog_slope(std::span<const double> partial, std::span<const double> log_scale) {
  const auto idx = last_decade(log_scale);
  std::vector<double> x, y;
  for (auto i : idx) {
    if (partial[i] > 0.0) {
      x.push_back(log_scale[i]);
      y.push_back(std::log(partial[i]));
    }
  }
  if (x.size() < 2 || x.back() - x.front() <= 0.0) return kNaN;
  return fit_slope(x, y);
}

}  // namespace

const char* to_string(VerdictStatus s) noexcept {
  switch (s) {
    case VerdictStatus::ConvergedBy: return "ConvergedBy";
    case VerdictStatus::DivergingWithRate: return "DivergingWithRate";
    case VerdictStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const char* to_string(GrowthModel m) noexcept {
  switch (m) {
    case GrowthModel::None: return "none";
    case GrowthModel::Power: return "power";
    case GrowthModel::LogPower: return "log-power";
    case GrowthModel::LogLog: return "log-log";
  }
  return "?";
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : kNaN;
}

std::vector<double> sequence_log_scale(std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::log(static_cast<double>(i + 1));
  return out;
}

MembershipVerdict classify_sum(std::span<const double> power_prefix, std::span<const double> log_scale, double p,
                               const VerdictPolicy& policy) {
  MembershipVerdict v;
  const std::size_t m = power_prefix.size();
  v.partial_norms.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    v.partial_norms[i] = p == 1.0 ? power_prefix[i] : std::pow(power_prefix[i], 1.0 / p);
  }
  if (m == 0) {
    v.evidence.rule = "empty";
    return v;
  }
  const auto& partial = v.partial_norms;
  if (partial.back() == 0.0) {
    v.status = VerdictStatus::ConvergedBy;
    v.converged_by = 1;
    v.evidence.rule = "zero";
    return v;
  }

  v.evidence.relative_increment = relative_increment(partial, policy.tail_fraction);
  v.evidence.loglog_slope = loglog_slope(partial, log_scale);
  if (v.evidence.relative_increment < policy.converge_rel_tol) {
    v.status = VerdictStatus::ConvergedBy;
    v.converged_by = first_within(partial, policy.converge_rel_tol);
    v.evidence.rule = "tail-increment";
    return v;
  }

  const auto blocks = make_blocks(power_prefix, log_scale);
  v.evidence.blocks = blocks.size();
  v.evidence.block_exponent = kNaN;
  v.evidence.block_trend = kNaN;

  const std::size_t w = std::max<std::size_t>(2, policy.window);
  if (blocks.size() >= std::max(policy.min_blocks, w + 1)) {
    const std::span<const Block> win(blocks.data() + blocks.size() - (w + 1), w + 1);
    bool positive = std::all_of(win.begin(), win.end(), [](const Block& b) { return b.sum > 0.0; });
    if (positive) {
      std::vector<double> s(w);
      for (std::size_t j = 0; j < w; ++j) {
        const double dlogb = std::log(win[j + 1].sum) - std::log(win[j].sum);
        const double dlogl = std::log(win[j + 1].level) - std::log(win[j].level);
        s[j] = -dlogb / dlogl;
      }
      double mean = 0.0;
      for (double x : s) mean += x;
      mean /= static_cast<double>(w);
      const double trend = (s.back() - s.front()) / static_cast<double>(w - 1);
      v.evidence.block_exponent = mean;
      v.evidence.block_trend = trend;

      // A falling s still converges if it stays above the floor when the
      // trend is extended over as many blocks again as were observed.
      const double projected = mean + std::min(0.0, trend) * static_cast<double>(blocks.size());
      if (mean >= policy.block_converge_min &&
          (trend >= policy.block_trend_min || projected >= policy.block_converge_min)) {
        v.status = VerdictStatus::ConvergedBy;
        v.converged_by = m;
        v.evidence.rule = "block-exponent";
        return v;
      }
      if (mean <= policy.block_diverge_max && trend <= policy.block_trend_max) {
        v.status = VerdictStatus::DivergingWithRate;
        v.evidence.rule = "block-exponent";

        std::vector<double> lam(w + 1), loglev(w + 1), logb(w + 1);
        for (std::size_t j = 0; j <= w; ++j) {
          lam[j] = win[j].level - 1.0;
          loglev[j] = std::log(win[j].level);
          logb[j] = std::log(win[j].sum);
        }
        const double g = fit_slope(lam, logb);
        const bool geometric = g > 0.0 && sse_of_fit(lam, logb) <= sse_of_fit(loglev, logb);
        if (geometric) {
          v.rate = {GrowthModel::Power, g / p};
        } else if (std::abs(mean - 1.0) <= policy.block_diverge_max - 1.0) {
          // norm^p ~ c log L: c = block sum per unit of log-level.
          double c = 0.0;
          for (std::size_t j = 0; j < w; ++j) {
            c += 0.5 * (win[j].sum + win[j + 1].sum) / (loglev[j + 1] - loglev[j]);
          }
          v.rate = {GrowthModel::LogLog, c / static_cast<double>(w)};
        } else {
          v.rate = {GrowthModel::LogPower, (1.0 - mean) / p};
        }
        return v;
      }
      if (trend >= policy.power_trend_min) {
        v.status = VerdictStatus::ConvergedBy;
        v.converged_by = m;
        v.evidence.rule = "block-trend";
        return v;
      }
      if (trend <= -policy.power_trend_min) {
        std::vector<double> lam(w + 1), logb(w + 1);
        for (std::size_t j = 0; j <= w; ++j) {
          lam[j] = win[j].level - 1.0;
          logb[j] = std::log(win[j].sum);
        }
        v.status = VerdictStatus::DivergingWithRate;
        v.rate = {GrowthModel::Power, fit_slope(lam, logb) / p};
        v.evidence.rule = "block-trend";
        return v;
      }
      v.evidence.rule = "block-exponent-undecided";
      return v;
    }
  }

  if (std::isfinite(v.evidence.loglog_slope) && v.evidence.loglog_slope > policy.loglog_slope_min) {
    v.status = VerdictStatus::DivergingWithRate;
    v.rate = {GrowthModel::Power, v.evidence.loglog_slope};
    v.evidence.rule = "loglog-slope";
    return v;
  }
  v.evidence.rule = "undecided";
  return v;
}

MembershipVerdict classify_sup(std::span<const double> prefix_sup, std::span<const double> log_scale,
                               const VerdictPolicy& policy) {
  MembershipVerdict v;
  v.partial_norms.assign(prefix_sup.begin(), prefix_sup.end());
  const std::size_t m = prefix_sup.size();
  if (m == 0) {
    v.evidence.rule = "empty";
    return v;
  }
  const auto& partial = v.partial_norms;
  if (partial.back() == 0.0) {
    v.status = VerdictStatus::ConvergedBy;
    v.converged_by = 1;
    v.evidence.rule = "zero";
    return v;
  }
  v.evidence.relative_increment = relative_increment(partial, policy.tail_fraction);
  v.evidence.loglog_slope = loglog_slope(partial, log_scale);
  v.evidence.block_exponent = kNaN;
  v.evidence.block_trend = kNaN;
  if (v.evidence.relative_increment < policy.converge_rel_tol) {
    v.status = VerdictStatus::ConvergedBy;
    v.converged_by = first_within(partial, policy.converge_rel_tol);
    v.evidence.rule = "tail-increment";
    return v;
  }

  const auto idx = last_decade(log_scale);
  std::vector<double> lam, loglev, logm;
  for (auto i : idx) {
    if (partial[i] > 0.0) {
      lam.push_back(log_scale[i]);
      loglev.push_back(std::log1p(log_scale[i]));
      logm.push_back(std::log(partial[i]));
    }
  }
  if (lam.size() >= 3 && lam.back() > lam.front()) {
    const double c = fit_slope(loglev, logm);
    v.evidence.block_exponent = -c;
    if (c >= policy.log_exponent_min) {
      v.status = VerdictStatus::DivergingWithRate;
      v.evidence.rule = "sup-log-growth";
      if (sse_of_fit(lam, logm) <= sse_of_fit(loglev, logm)) {
        v.rate = {GrowthModel::Power, fit_slope(lam, logm)};
      } else {
        v.rate = {GrowthModel::LogPower, c};
      }
      return v;
    }
  }
  v.evidence.rule = "undecided";
  return v;
}

}  // namespace scalelab
