#ifndef SHIFTCONV_EXPERIMENTS_HPP_
#define SHIFTCONV_EXPERIMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "shiftconv/methods.hpp"

namespace shiftconv {

struct MethodComparison {
  double log10_tail = 0.0;
  /// |estimate / truth - 1|; 0 when both are 0, 1 when only the estimate is.
  double relerr = 0.0;
  double log10_relerr = 0.0;
};

struct ComparisonRow {
  std::int64_t s0 = 0;
  double gold_log10_tail = 0.0;
  std::vector<MethodComparison> methods;
};

/// Relative error of exp(log_estimate) against exp(log_truth), computed from
/// the log difference so tiny tails do not underflow.
double relative_error_from_logs(double log_estimate, double log_truth);

/// Every s0 in [lo, hi] against direct_convolution_logspace.
std::vector<ComparisonRow> compare_methods(const ProbabilityVector& pv,
                                           const std::vector<Method>& methods, std::int64_t lo,
                                           std::int64_t hi);

/// s0,gold_log10_tail, then per method <m>_log10_tail,<m>_relerr,<m>_log10_relerr.
void write_comparison_csv(std::ostream& out, const std::vector<Method>& methods,
                          const std::vector<ComparisonRow>& rows);

struct BenchConfig {
  std::vector<std::size_t> sizes;
  std::vector<Method> methods;
  std::size_t reps = 10;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct BenchRow {
  std::size_t n = 0;
  std::string method;
  double mean_seconds = 0.0;
  std::size_t repetitions = 0;
};

/// Uniform probability vector used for repetition `rep` at size n. Every
/// method sees the same vectors.
ProbabilityVector bench_input(std::size_t n, std::uint64_t seed, std::size_t rep);

/// Threshold used when timing shiftconvolve: ceil(0.9 N).
std::int64_t bench_threshold(std::size_t n);

/// Seconds spent in one engine call, timed on a steady clock. Input
/// preparation is outside the timed region.
double time_engine_call(const Method& method, const ProbabilityVector& pv,
                        const TreeOptions& options);

std::vector<BenchRow> run_bench(const BenchConfig& config);

/// Least-squares slope of log(mean_seconds) against log(N) over the rows of
/// one method. NaN with fewer than two distinct sizes.
double fit_loglog_slope(const std::vector<BenchRow>& rows, const std::string& method);

/// N,method,mean_seconds,repetitions
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace shiftconv

#endif  // SHIFTCONV_EXPERIMENTS_HPP_
