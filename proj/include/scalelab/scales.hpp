#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "scalelab/finite_seq.hpp"
#include "scalelab/ratio_profile.hpp"
#include "scalelab/space_spec.hpp"
#include "scalelab/verdict.hpp"

namespace scalelab {

enum class Convergence { Converges, Diverges };

const char* to_string(Convergence c) noexcept;

/// a_n = (n + offset)^{-beta} (1 + log_base(n + offset))^{-delta}.
struct PowerLogFamily {
  double beta = 1.0;
  double delta = 0.0;
  double offset = 0.0;
  double log_base = 0.0;  ///< 0 means natural log

  double value(double n) const;
  double log_value(double n) const;
  /// Terms for n = first, first+1, ..., first+count-1.
  FiniteSeq sequence(std::size_t count, std::size_t first = 1) const;
};

/// Integral-test verdict for the power-log family (offset 0, natural log) in
/// spec. Finite p: converges iff (beta-r)p > 0, or beta = r and (delta-gamma)p > 1.
/// p = inf: bounded iff beta > r, or beta = r and delta >= gamma.
Convergence power_log_oracle(double beta, double delta, const SpaceSpec& spec);

/// The five strict inclusions of the Lorentz and Lorentz-Zygmund scales.
///   a: l_{p,r+e}         in l_{q,r}
///   b: l_{p,r}           in l_{q,r},        p < q
///   c: l_{p,r+e,gamma}   in l_{p,r,alpha}
///   d: l_{p,r,gamma}     in l_{q,r,gamma},  p < q
///   e: l_{p,r,gamma}     in l_{p,r,alpha},  alpha < gamma
struct InclusionCase {
  char id = 'a';
  double p = 1.0;
  double q = 1.0;
  double r = 1.0;
  double e = 1.0;
  double gamma = 1.0;
  double alpha = 1.0;

  /// Throws std::invalid_argument when the case constraints fail.
  void validate() const;
  SpaceSpec small() const;
  SpaceSpec big() const;
  /// Witness exponents for this case.
  PowerLogFamily witness() const;
  std::string describe() const;
};

struct WitnessReport {
  PowerLogFamily family;
  SpaceSpec in_space;
  SpaceSpec not_in_space;
  Convergence oracle_in = Convergence::Converges;
  Convergence oracle_out = Convergence::Diverges;
  MembershipVerdict numeric_in;
  MembershipVerdict numeric_out;
  std::size_t length = 0;

  /// Oracle says in/out and the numeric verdicts agree with no Inconclusive.
  bool certified() const noexcept;
};

inline constexpr std::size_t kWitnessLength = std::size_t{1} << 20;

/// Builds and certifies the witness for a case. Throws std::logic_error if the
/// oracle contradicts the requested inclusion.
WitnessReport witness_sequence(const InclusionCase& c, std::size_t length = kWitnessLength,
                               const VerdictPolicy& policy = {});

/// Certifies a given family in big \ small.
WitnessReport certify_witness(const PowerLogFamily& family, const SpaceSpec& big, const SpaceSpec& small,
                              std::size_t length = kWitnessLength, const VerdictPolicy& policy = {});

/// A power-log family lying in big but not in small, when small is strictly
/// contained in big; nullopt otherwise.
std::optional<PowerLogFamily> find_witness(const SpaceSpec& small, const SpaceSpec& big);

/// Quasi-norm of the indicator of the first N positions. Sums are direct up
/// to 2^20 terms; longer ones add an Euler-Maclaurin tail.
double ones_norm(const SpaceSpec& spec, std::size_t N);

/// ||1_N||_{s1} / ||1_N||_{s2} over Ns. The predicted rate is r1 - r2; the
/// verdict is Diverges iff r1 > r2, Vanishes iff r1 < r2, Bounded otherwise.
RatioProfile ones_ratio_profile(const SpaceSpec& s1, const SpaceSpec& s2, const std::vector<std::size_t>& Ns,
                                const ProfilePolicy& policy = {});

/// Limit of ||1_N||_{s1} / ||1_N||_{s2} for Lorentz specs with equal r:
/// (r q)^{1/q} / (r p)^{1/p} with p from s1 and q from s2.
double ones_ratio_limit(const SpaceSpec& s1, const SpaceSpec& s2);

/// sum_{k=1}^N k^alpha / N^{alpha+1}. Throws for alpha <= -1 or N = 0.
double polya_szego_ratio(double alpha, std::size_t N);

/// a_n >= a_{n+1} and a_n - 2a_{n+1} + a_{n+2} >= -tol * a_n for all n.
bool convexity_check(const FiniteSeq& seq, double tol = 1e-12);

struct DoublingEstimate {
  double sup = 0.0;        ///< max_{n <= N} eps_n / eps_{2n}
  double head_sup = 0.0;   ///< max over n <= N/2
  std::size_t argmax = 0;
  bool bounded = false;    ///< the sup stopped growing over the last octave
};

/// Doubling ratio from a log-valued sequence, n = 1..N. bounded requires the
/// last octave to raise the running sup by at most rel_growth.
DoublingEstimate doubling_check(const std::function<double(double)>& log_eps, std::size_t N,
                                double rel_growth = 0.01);
DoublingEstimate doubling_check(const PowerLogFamily& family, std::size_t N, double rel_growth = 0.01);

}  // namespace scalelab
