#ifndef SHIFTCONV_METHODS_HPP_
#define SHIFTCONV_METHODS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shiftconv/convolvers.hpp"
#include "shiftconv/pbd.hpp"

namespace shiftconv {

enum class MethodKind {
  kDc,             // dc
  kDcLog,          // dc-log
  kPaFft,          // pa-fft
  kFpaFft,         // fpa-fft
  kDcFft,          // dc-fft:<M|heuristic>
  kDftCf,          // dft-cf
  kShiftConvolve,  // shiftconvolve
  kFpaFftNoShift,  // fpa-fft-noshift
};

struct Method {
  MethodKind kind = MethodKind::kShiftConvolve;
  /// dc-fft group count; empty means heuristic_m(N).
  std::optional<std::size_t> groups;

  std::string name() const;
  bool operator==(const Method&) const = default;
};

/// Throws InputError for names outside the closed set.
Method parse_method(std::string_view name);
/// Comma separated.
std::vector<Method> parse_method_list(std::string_view list);

/// The gold standard every comparison is made against.
inline Method gold_method() { return {MethodKind::kDcLog, std::nullopt}; }

struct MethodPmf {
  /// Full support 0..N; entries outside the attainable range are -inf.
  LogPmf log_pmf;
  /// Engine output before clamping, same indexing as log_pmf.
  std::vector<double> raw;
  /// Set for shiftconvolve and fpa-fft-noshift.
  std::optional<ShiftParameters> shift;
  std::optional<double> log_mass;
};

/// s0 selects the tilt for shiftconvolve; without it the tilt is 0. Other
/// methods ignore s0.
MethodPmf method_pmf(const Method& method, const ProbabilityVector& pv,
                     std::optional<std::int64_t> s0, const TreeOptions& options = {});

/// log P(X >= s0) for every s0 in [lo, hi]. shiftconvolve solves a tilt per
/// threshold; every other method sums one pmf.
std::vector<LogProbability> method_tails(const Method& method, const ProbabilityVector& pv,
                                         std::int64_t lo, std::int64_t hi,
                                         const TreeOptions& options = {});

struct TailReport {
  LogProbability tail;
  /// Threshold actually evaluated (N - s0 on the complement for left tails).
  std::int64_t evaluated_threshold = 0;
  std::optional<ShiftParameters> shift;
  bool convolved = true;
};

/// Right tail P(X >= s0), or with left = true P(X <= s0) via the complement.
/// Throws InputError when s0 is outside [0, N+1] (right) or [0, N] (left).
TailReport method_tail(const Method& method, const ProbabilityVector& pv, std::int64_t s0,
                       bool left, const TreeOptions& options = {});

}  // namespace shiftconv

#endif  // SHIFTCONV_METHODS_HPP_
