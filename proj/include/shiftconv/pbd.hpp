#ifndef SHIFTCONV_PBD_HPP_
#define SHIFTCONV_PBD_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace shiftconv {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// A computation that cannot produce a trustworthy answer (solver did not
/// converge, a tilted probability rounded to 0 or 1).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TiltOverflowError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Success probabilities of independent Bernoulli trials.
struct ProbabilityVector {
  std::vector<double> probs;

  std::size_t size() const { return probs.size(); }
};

/// Throws std::invalid_argument unless every entry is finite and in [0, 1].
void validate_probabilities(std::span<const double> probs);

/// Trials with p strictly inside (0, 1), plus counts of the deterministic ones.
/// Each guaranteed success shifts the support of the sum by one.
struct PreprocessedInput {
  std::vector<double> core_probs;
  std::size_t ones_count = 0;
  std::size_t zeros_count = 0;

  std::size_t core_size() const { return core_probs.size(); }
  std::size_t total_size() const { return core_probs.size() + ones_count + zeros_count; }
};

/// Tilt theta and log M(theta), the log-MGF of the untilted core trials.
struct ShiftParameters {
  double theta = 0.0;
  double log_mgf = 0.0;
};

/// pmf in natural logs; log_values[k] is log P(X = k + support_offset).
struct LogPmf {
  std::vector<double> log_values;
  std::size_t support_offset = 0;

  std::size_t size() const { return log_values.size(); }
};

struct LogProbability {
  double log_p = 0.0;

  /// May underflow to 0 although log_p is finite.
  double linear() const;
  double log10() const;
};

PreprocessedInput preprocess(const ProbabilityVector& pv);

/// Mean of the tilted sum: sum_i p_i e^theta / (1 - p_i + p_i e^theta).
double shifted_mean(double theta, std::span<const double> probs);
inline double shifted_mean(double theta, const PreprocessedInput& in) {
  return shifted_mean(theta, in.core_probs);
}

/// sum_i log(1 - p_i + p_i e^theta), evaluated without overflow for large |theta|.
double log_mgf(double theta, std::span<const double> probs);

/// Tilt whose shifted mean equals target, 0 < target < core_size().
///
/// Bisection on the monotone residual shifted_mean(theta) - target. The
/// bracket is grown by doubling away from 0 until the residual changes sign;
/// iteration stops once |residual| <= 1e-9 * core_size() or after 200 halvings.
/// Throws std::invalid_argument for targets outside the open interval and
/// NumericError if the tolerance is not reached.
ShiftParameters solve_theta(const PreprocessedInput& in, double target);

/// Maps every core p to p e^theta / (1 - p + p e^theta). Throws
/// TiltOverflowError when a tilted probability rounds to exactly 0 or 1.
PreprocessedInput shift_probabilities(const PreprocessedInput& in, double theta);

/// log q(j) = log q_theta(j) - j theta + log M(theta) for every index j.
/// The result is not renormalized; see log_total_mass().
LogPmf unshift_log_pmf(const LogPmf& tilted, const ShiftParameters& shift);

struct LeftTailProblem {
  ProbabilityVector complement;
  std::int64_t threshold = 0;
};

/// P(X <= s0) = P(X' >= N - s0) with X' the sum over 1 - p_i.
LeftTailProblem left_tail_transform(const ProbabilityVector& pv, std::int64_t s0);

double log_sum_exp(std::span<const double> values);
double log_add_exp(double a, double b);

/// log P(X >= s0). Thresholds below the support give 0, above it -inf.
LogProbability log_tail_sum(const LogPmf& pmf, std::int64_t s0);

/// log of the total mass; 0 for a normalized pmf.
double log_total_mass(const LogPmf& pmf);

}  // namespace shiftconv

#endif  // SHIFTCONV_PBD_HPP_
