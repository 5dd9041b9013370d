#ifndef SHIFTCONV_CONVOLVERS_HPP_
#define SHIFTCONV_CONVOLVERS_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "shiftconv/pbd.hpp"

namespace shiftconv {

/**
 * Linear-scale pmf over core support 0..N' (shifted by support_offset).
 *
 * values is clamped to be non-negative; raw keeps the engine output before
 * clamping so the FFT noise floor stays observable. For engines that only add
 * non-negative numbers the two are identical.
 */
struct Pmf {
  std::vector<double> values;
  std::vector<double> raw;
  std::size_t support_offset = 0;

  std::size_t size() const { return values.size(); }
};

/// Number of groups for dc_fft.
struct GroupParameter {
  std::size_t groups = 2;
};

struct TreeOptions {
  /// Worker threads for the independent pair products of one tree level.
  unsigned threads = 1;
};

/// Adds Bernoulli factors one at a time; O(N^2) and accurate in relative terms
/// down to the underflow threshold.
Pmf direct_convolution(const PreprocessedInput& in);

/// The same recurrence carried out on logs, so entries far below the smallest
/// double stay representable.
LogPmf direct_convolution_logspace(const PreprocessedInput& in);

/// Pair-aggregated FFT convolution (DC-FFT with M = N).
///
/// Every trial starts as the 4-point spectrum of (1-p, p, 0, 0). Each level
/// multiplies spectra in adjacent pairs, inverts, zero-pads to twice the
/// length and transforms again; an odd count is padded with the all-ones
/// spectrum of delta_0.
Pmf pair_aggregated_fft(const PreprocessedInput& in, const TreeOptions& options = {});

/// pair_aggregated_fft that keeps each pair product as the even half of the
/// next spectrum and computes only the odd half (spectrum_double), with a
/// real-output inverse.
Pmf frugal_pair_aggregated(const PreprocessedInput& in, const TreeOptions& options = {});

/// Direct convolution inside contiguous groups of ceil(N'/M) trials, then FFT
/// convolution between groups. M = 1 is plain direct convolution.
Pmf dc_fft(const PreprocessedInput& in, GroupParameter m);

/// max{2, 2^round(log2(N/750))}, ties to even, capped at N.
GroupParameter heuristic_m(std::size_t n);

/// Inverts the characteristic function sampled at 2 pi l / (N'+1). The raw
/// output keeps the zero and negative values this produces for tiny entries.
Pmf dft_cf_pmf(const PreprocessedInput& in);

/// Entry-wise log; entries <= 0 become -inf.
LogPmf to_log_pmf(const Pmf& pmf);

struct ShiftConvolveResult {
  LogPmf pmf;
  ShiftParameters shift;
  /// log of the unshifted total mass. Non-zero values measure the damage done
  /// by FFT noise on the far side of the tilt.
  double log_mass = 0.0;
};

/// Tilts the core trials by `shift`, runs frugal_pair_aggregated, converts to
/// logs, reverses the tilt and applies the ones offset.
ShiftConvolveResult shift_convolve_with(const PreprocessedInput& in, const ShiftParameters& shift,
                                        const TreeOptions& options = {});

/**
 * Full ShiftConvolve pipeline producing the pmf in logs.
 *
 * With shift_enabled the tilt is solved so the tilted mean sits at s0 (the
 * core target is clamped into [0.5, N'-0.5]); without it theta = 0 and the
 * result is the plain frugal FFT pmf. The pmf is accurate in relative terms
 * around s0; far on the other side of the tilt it is not.
 */
ShiftConvolveResult shift_convolve(const ProbabilityVector& pv, std::int64_t s0,
                                   bool shift_enabled, const TreeOptions& options = {});

LogPmf shift_convolve_pmf(const ProbabilityVector& pv, std::int64_t s0, bool shift_enabled);

struct TailResult {
  LogProbability tail;
  ShiftParameters shift;
  /// False when the answer came from a support boundary without convolving.
  bool convolved = false;
};

/**
 * log P(X >= s0), 0 <= s0 <= N+1.
 *
 * Thresholds at or below the guaranteed successes give 0, thresholds above
 * the attainable maximum -inf, and s0 at the maximum the sum of log p over
 * the core. Otherwise the tilt is solved at s0 when s0 lies above the core
 * mean (the tail is then small) and left at 0 otherwise (the tail is then at
 * least about one half and needs no tilt).
 */
TailResult shift_convolve_tail_detailed(const ProbabilityVector& pv, std::int64_t s0,
                                        const TreeOptions& options = {});

LogProbability shift_convolve_tail(const ProbabilityVector& pv, std::int64_t s0);

}  // namespace shiftconv

#endif  // SHIFTCONV_CONVOLVERS_HPP_
