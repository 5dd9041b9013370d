#include "shiftconv/experiments.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>

#include "shiftconv/generate.hpp"
#include "shiftconv/io.hpp"

namespace shiftconv {
namespace {

double to_log10(double natural_log) { return natural_log / std::log(10.0); }

// Keeps engine results observable so the timed calls are not elided.
volatile double g_sink = 0.0;

void consume(const Pmf& pmf) { g_sink = g_sink + (pmf.raw.empty() ? 0.0 : pmf.raw.back()); }
void consume(const LogPmf& pmf) {
  g_sink = g_sink + (pmf.log_values.empty() ? 0.0 : pmf.log_values.back());
}

}  // namespace

double relative_error_from_logs(double log_estimate, double log_truth) {
  if (log_truth == kNegInf) return log_estimate == kNegInf ? 0.0 : std::numeric_limits<double>::infinity();
  if (log_estimate == kNegInf) return 1.0;
  return std::abs(std::expm1(log_estimate - log_truth));
}

std::vector<ComparisonRow> compare_methods(const ProbabilityVector& pv,
                                           const std::vector<Method>& methods, std::int64_t lo,
                                           std::int64_t hi) {
  const auto gold = method_tails(gold_method(), pv, lo, hi);
  std::vector<std::vector<LogProbability>> tails;
  tails.reserve(methods.size());
  for (const Method& m : methods) {
    tails.push_back(m == gold_method() ? gold : method_tails(m, pv, lo, hi));
  }
  std::vector<ComparisonRow> rows;
  rows.reserve(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ComparisonRow row;
    row.s0 = lo + static_cast<std::int64_t>(i);
    row.gold_log10_tail = to_log10(gold[i].log_p);
    for (const auto& t : tails) {
      MethodComparison c;
      c.log10_tail = to_log10(t[i].log_p);
      c.relerr = relative_error_from_logs(t[i].log_p, gold[i].log_p);
      c.log10_relerr = std::log10(c.relerr);
      row.methods.push_back(c);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_comparison_csv(std::ostream& out, const std::vector<Method>& methods,
                          const std::vector<ComparisonRow>& rows) {
  out << "s0,gold_log10_tail";
  for (const Method& m : methods) {
    const std::string name = m.name();
    out << ',' << name << "_log10_tail," << name << "_relerr," << name << "_log10_relerr";
  }
  out << '\n';
  for (const auto& row : rows) {
    out << row.s0 << ',' << format_double(row.gold_log10_tail);
    for (const auto& c : row.methods) {
      out << ',' << format_double(c.log10_tail) << ',' << format_double(c.relerr) << ','
          << format_double(c.log10_relerr);
    }
    out << '\n';
  }
}

ProbabilityVector bench_input(std::size_t n, std::uint64_t seed, std::size_t rep) {
  GeneratorSpec spec;
  spec.family = Family::kUniform;
  spec.n = n;
  spec.seed = seed * 0x9E3779B97F4A7C15ULL + n * 1000003ULL + rep;
  return generate_probabilities(spec);
}

std::int64_t bench_threshold(std::size_t n) {
  return static_cast<std::int64_t>((9 * n + 9) / 10);
}

double time_engine_call(const Method& method, const ProbabilityVector& pv,
                        const TreeOptions& options) {
  using Clock = std::chrono::steady_clock;
  const PreprocessedInput in = preprocess(pv);
  Clock::time_point start;
  Clock::time_point stop;
  switch (method.kind) {
    case MethodKind::kDc:
      start = Clock::now();
      consume(direct_convolution(in));
      stop = Clock::now();
      break;
    case MethodKind::kDcLog:
      start = Clock::now();
      consume(direct_convolution_logspace(in));
      stop = Clock::now();
      break;
    case MethodKind::kPaFft:
      start = Clock::now();
      consume(pair_aggregated_fft(in, options));
      stop = Clock::now();
      break;
    case MethodKind::kFpaFft:
      start = Clock::now();
      consume(frugal_pair_aggregated(in, options));
      stop = Clock::now();
      break;
    case MethodKind::kDcFft: {
      const GroupParameter m{method.groups ? std::min(*method.groups, in.core_size())
                                           : heuristic_m(in.core_size()).groups};
      start = Clock::now();
      consume(dc_fft(in, m));
      stop = Clock::now();
      break;
    }
    case MethodKind::kDftCf:
      start = Clock::now();
      consume(dft_cf_pmf(in));
      stop = Clock::now();
      break;
    case MethodKind::kShiftConvolve: {
      const std::int64_t s0 = bench_threshold(pv.size());
      start = Clock::now();
      g_sink = g_sink + shift_convolve_tail_detailed(pv, s0, options).tail.log_p;
      stop = Clock::now();
      break;
    }
    case MethodKind::kFpaFftNoShift:
      start = Clock::now();
      consume(shift_convolve_with(in, {}, options).pmf);
      stop = Clock::now();
      break;
  }
  return std::chrono::duration<double>(stop - start).count();
}

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  if (config.reps < 1) throw InputError("bench: --reps must be at least 1");
  const TreeOptions options{config.threads};
  std::vector<BenchRow> rows;
  for (std::size_t n : config.sizes) {
    if (n < 1) throw InputError("bench: sizes must be positive");
    for (const Method& method : config.methods) {
      double total = 0.0;
      for (std::size_t rep = 0; rep < config.reps; ++rep) {
        total += time_engine_call(method, bench_input(n, config.seed, rep), options);
      }
      // A clock tick below resolution must still give a positive mean.
      const double mean = std::max(total / static_cast<double>(config.reps), 1e-9);
      rows.push_back({n, method.name(), mean, config.reps});
    }
  }
  return rows;
}

double fit_loglog_slope(const std::vector<BenchRow>& rows, const std::string& method) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (const auto& r : rows) {
    if (r.method != method) continue;
    const double x = std::log(static_cast<double>(r.n));
    const double y = std::log(r.mean_seconds);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  const double c = static_cast<double>(count);
  const double denom = c * sxx - sx * sx;
  if (count < 2 || denom <= 1e-12 * c * sxx) return std::numeric_limits<double>::quiet_NaN();
  return (c * sxy - sx * sy) / denom;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "N,method,mean_seconds,repetitions\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.method << ',' << format_double(r.mean_seconds) << ',' << r.repetitions
        << '\n';
  }
}

}  // namespace shiftconv
