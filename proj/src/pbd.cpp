#include "shiftconv/pbd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace shiftconv {
namespace {

// Above this tilt e^theta is no longer formed explicitly.
constexpr double kLargeTheta = 30.0;

constexpr int kMaxBisections = 200;
constexpr int kMaxBracketDoublings = 64;

// Success probability of one Bernoulli(p) after tilting by theta.
double tilt_one(double p, double theta) {
  if (theta > 0.0) return 1.0 / (1.0 + ((1.0 - p) / p) * std::exp(-theta));
  const double e = std::exp(theta);
  return p * e / (1.0 - p + p * e);
}

double log_mgf_one(double p, double theta) {
  if (theta <= kLargeTheta) return std::log1p(p * std::expm1(theta));
  return theta + std::log(p) + std::log1p(((1.0 - p) / p) * std::exp(-theta));
}

}  // namespace

void validate_probabilities(std::span<const double> probs) {
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw std::invalid_argument("probability at index " + std::to_string(i) +
                                  " is outside [0, 1]: " + std::to_string(p));
    }
  }
}

double LogProbability::linear() const { return std::exp(log_p); }
double LogProbability::log10() const { return log_p / std::numbers::ln10; }

PreprocessedInput preprocess(const ProbabilityVector& pv) {
  validate_probabilities(pv.probs);
  PreprocessedInput out;
  out.core_probs.reserve(pv.size());
  for (double p : pv.probs) {
    if (p == 0.0) {
      ++out.zeros_count;
    } else if (p == 1.0) {
      ++out.ones_count;
    } else {
      out.core_probs.push_back(p);
    }
  }
  return out;
}

double shifted_mean(double theta, std::span<const double> probs) {
  double sum = 0.0;
  for (double p : probs) sum += tilt_one(p, theta);
  return sum;
}

double log_mgf(double theta, std::span<const double> probs) {
  double sum = 0.0;
  for (double p : probs) sum += log_mgf_one(p, theta);
  return sum;
}

ShiftParameters solve_theta(const PreprocessedInput& in, double target) {
  const auto n = static_cast<double>(in.core_size());
  if (!(target > 0.0 && target < n)) {
    throw std::invalid_argument("solve_theta: target " + std::to_string(target) +
                                " outside the open interval (0, " + std::to_string(n) + ")");
  }
  const double tolerance = 1e-9 * n;
  const auto residual = [&](double theta) { return shifted_mean(theta, in.core_probs) - target; };

  const double r0 = residual(0.0);
  if (std::abs(r0) <= tolerance) return {0.0, 0.0};

  // residual(lo) < 0 < residual(hi)
  double lo = 0.0;
  double hi = 0.0;
  if (r0 < 0.0) {
    hi = 1.0;
    int doublings = 0;
    while (residual(hi) < 0.0) {
      lo = hi;
      hi *= 2.0;
      if (++doublings > kMaxBracketDoublings) throw NumericError("solve_theta: no upper bracket");
    }
  } else {
    lo = -1.0;
    int doublings = 0;
    while (residual(lo) > 0.0) {
      hi = lo;
      lo *= 2.0;
      if (++doublings > kMaxBracketDoublings) throw NumericError("solve_theta: no lower bracket");
    }
  }

  double best_theta = lo;
  double best_residual = residual(lo);
  for (int iter = 0; iter < kMaxBisections; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double r = residual(mid);
    if (std::abs(r) < std::abs(best_residual)) {
      best_theta = mid;
      best_residual = r;
    }
    if (std::abs(r) <= tolerance || mid == lo || mid == hi) break;
    (r < 0.0 ? lo : hi) = mid;
  }
  if (std::abs(best_residual) > tolerance) {
    throw NumericError("solve_theta: residual " + std::to_string(best_residual) +
                       " above tolerance " + std::to_string(tolerance));
  }
  return {best_theta, log_mgf(best_theta, in.core_probs)};
}

PreprocessedInput shift_probabilities(const PreprocessedInput& in, double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("shift_probabilities: theta not finite");
  PreprocessedInput out = in;
  if (theta == 0.0) return out;
  for (double& p : out.core_probs) {
    p = tilt_one(p, theta);
    if (!(p > 0.0 && p < 1.0)) {
      throw TiltOverflowError("tilt by theta=" + std::to_string(theta) +
                              " rounds a success probability to " + std::to_string(p));
    }
  }
  return out;
}

LogPmf unshift_log_pmf(const LogPmf& tilted, const ShiftParameters& shift) {
  LogPmf out{tilted.log_values, tilted.support_offset};
  for (std::size_t j = 0; j < out.log_values.size(); ++j) {
    double& v = out.log_values[j];
    if (v == kNegInf) continue;
    v = v - static_cast<double>(j) * shift.theta + shift.log_mgf;
  }
  return out;
}

LeftTailProblem left_tail_transform(const ProbabilityVector& pv, std::int64_t s0) {
  const auto n = static_cast<std::int64_t>(pv.size());
  if (s0 < 0 || s0 > n) {
    throw std::invalid_argument("left_tail_transform: s0=" + std::to_string(s0) +
                                " outside [0, " + std::to_string(n) + "]");
  }
  LeftTailProblem out;
  out.complement.probs.reserve(pv.size());
  for (double p : pv.probs) out.complement.probs.push_back(1.0 - p);
  out.threshold = n - s0;
  return out;
}

double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;
  return a + std::log1p(std::exp(b - a));
}

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return kNegInf;
  const double top = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - top);
  return top + std::log(sum);
}

LogProbability log_tail_sum(const LogPmf& pmf, std::int64_t s0) {
  const auto offset = static_cast<std::int64_t>(pmf.support_offset);
  const auto end = offset + static_cast<std::int64_t>(pmf.size());
  if (s0 < offset) return {0.0};
  if (s0 >= end) return {kNegInf};
  const auto first = static_cast<std::size_t>(s0 - offset);
  return {log_sum_exp(std::span<const double>(pmf.log_values).subspan(first))};
}

double log_total_mass(const LogPmf& pmf) { return log_sum_exp(pmf.log_values); }

}  // namespace shiftconv
