#include "shiftconv/methods.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "shiftconv/io.hpp"

namespace shiftconv {
namespace {

constexpr std::string_view kDcFftPrefix = "dc-fft:";

// Expands a core-support linear pmf onto the full support 0..N.
MethodPmf expand(const Pmf& pmf, std::size_t total) {
  MethodPmf out;
  out.log_pmf.log_values.assign(total + 1, kNegInf);
  out.raw.assign(total + 1, 0.0);
  const LogPmf logs = to_log_pmf(pmf);
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    out.log_pmf.log_values[k + pmf.support_offset] = logs.log_values[k];
    out.raw[k + pmf.support_offset] = pmf.raw[k];
  }
  return out;
}

MethodPmf expand(const LogPmf& pmf, std::size_t total) {
  MethodPmf out;
  out.log_pmf.log_values.assign(total + 1, kNegInf);
  out.raw.assign(total + 1, 0.0);
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    out.log_pmf.log_values[k + pmf.support_offset] = pmf.log_values[k];
    out.raw[k + pmf.support_offset] = std::exp(pmf.log_values[k]);
  }
  return out;
}

std::size_t dc_fft_groups(const Method& method, const PreprocessedInput& in) {
  if (method.groups) return std::min(*method.groups, in.core_size());
  return heuristic_m(in.core_size()).groups;
}

}  // namespace

std::string Method::name() const {
  switch (kind) {
    case MethodKind::kDc:
      return "dc";
    case MethodKind::kDcLog:
      return "dc-log";
    case MethodKind::kPaFft:
      return "pa-fft";
    case MethodKind::kFpaFft:
      return "fpa-fft";
    case MethodKind::kDcFft:
      return groups ? fmt::format("dc-fft:{}", *groups) : std::string("dc-fft:heuristic");
    case MethodKind::kDftCf:
      return "dft-cf";
    case MethodKind::kShiftConvolve:
      return "shiftconvolve";
    case MethodKind::kFpaFftNoShift:
      return "fpa-fft-noshift";
  }
  return {};
}

Method parse_method(std::string_view name) {
  if (name == "dc") return {MethodKind::kDc, std::nullopt};
  if (name == "dc-log") return {MethodKind::kDcLog, std::nullopt};
  if (name == "pa-fft") return {MethodKind::kPaFft, std::nullopt};
  if (name == "fpa-fft") return {MethodKind::kFpaFft, std::nullopt};
  if (name == "dft-cf") return {MethodKind::kDftCf, std::nullopt};
  if (name == "shiftconvolve") return {MethodKind::kShiftConvolve, std::nullopt};
  if (name == "fpa-fft-noshift") return {MethodKind::kFpaFftNoShift, std::nullopt};
  if (name.starts_with(kDcFftPrefix)) {
    const std::string_view arg = name.substr(kDcFftPrefix.size());
    if (arg == "heuristic") return {MethodKind::kDcFft, std::nullopt};
    std::size_t m = 0;
    const auto [end, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), m);
    if (!arg.empty() && ec == std::errc() && end == arg.data() + arg.size() && m >= 1) {
      return {MethodKind::kDcFft, m};
    }
    throw InputError(fmt::format("method '{}': group count must be a positive integer or "
                                 "'heuristic'",
                                 name));
  }
  throw InputError(fmt::format(
      "unknown method '{}' (expected dc, dc-log, pa-fft, fpa-fft, dc-fft:<M|heuristic>, dft-cf, "
      "shiftconvolve, fpa-fft-noshift)",
      name));
}

std::vector<Method> parse_method_list(std::string_view list) {
  std::vector<Method> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    const auto item = list.substr(start, comma == std::string_view::npos ? comma : comma - start);
    out.push_back(parse_method(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

MethodPmf method_pmf(const Method& method, const ProbabilityVector& pv,
                     std::optional<std::int64_t> s0, const TreeOptions& options) {
  const PreprocessedInput in = preprocess(pv);
  const std::size_t total = pv.size();
  switch (method.kind) {
    case MethodKind::kDc:
      return expand(direct_convolution(in), total);
    case MethodKind::kDcLog:
      return expand(direct_convolution_logspace(in), total);
    case MethodKind::kPaFft:
      return expand(pair_aggregated_fft(in, options), total);
    case MethodKind::kFpaFft:
      return expand(frugal_pair_aggregated(in, options), total);
    case MethodKind::kDcFft:
      if (in.core_size() == 0) return expand(direct_convolution(in), total);
      return expand(dc_fft(in, {dc_fft_groups(method, in)}), total);
    case MethodKind::kDftCf:
      return expand(dft_cf_pmf(in), total);
    case MethodKind::kShiftConvolve:
    case MethodKind::kFpaFftNoShift: {
      const bool tilt = method.kind == MethodKind::kShiftConvolve && s0.has_value();
      const ShiftConvolveResult result = shift_convolve(pv, s0.value_or(0), tilt, options);
      MethodPmf out = expand(result.pmf, total);
      out.shift = result.shift;
      out.log_mass = result.log_mass;
      return out;
    }
  }
  throw InputError("unhandled method");
}

std::vector<LogProbability> method_tails(const Method& method, const ProbabilityVector& pv,
                                         std::int64_t lo, std::int64_t hi,
                                         const TreeOptions& options) {
  std::vector<LogProbability> out;
  if (hi < lo) return out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  if (method.kind == MethodKind::kShiftConvolve) {
    for (std::int64_t s0 = lo; s0 <= hi; ++s0) {
      out.push_back(shift_convolve_tail_detailed(pv, s0, options).tail);
    }
    return out;
  }
  const LogPmf pmf = method_pmf(method, pv, std::nullopt, options).log_pmf;
  // Suffix sums in logs, smallest entries first.
  std::vector<double> suffix(pmf.size() + 1, kNegInf);
  for (std::size_t k = pmf.size(); k-- > 0;) suffix[k] = log_add_exp(suffix[k + 1], pmf.log_values[k]);
  for (std::int64_t s0 = lo; s0 <= hi; ++s0) {
    double v = 0.0;
    if (s0 > static_cast<std::int64_t>(pmf.size())) {
      v = kNegInf;
    } else if (s0 > 0) {
      v = suffix[static_cast<std::size_t>(s0)];
    }
    out.push_back({v});
  }
  return out;
}

TailReport method_tail(const Method& method, const ProbabilityVector& pv, std::int64_t s0,
                       bool left, const TreeOptions& options) {
  const auto n = static_cast<std::int64_t>(pv.size());
  const std::int64_t max_s0 = left ? n : n + 1;
  if (s0 < 0 || s0 > max_s0) {
    throw InputError(fmt::format("s0={} outside [0, {}] for N={}", s0, max_s0, n));
  }
  ProbabilityVector complement;
  const ProbabilityVector* input = &pv;
  TailReport report;
  report.evaluated_threshold = s0;
  if (left) {
    LeftTailProblem problem = left_tail_transform(pv, s0);
    complement = std::move(problem.complement);
    input = &complement;
    report.evaluated_threshold = problem.threshold;
  }
  if (method.kind == MethodKind::kShiftConvolve) {
    const TailResult r = shift_convolve_tail_detailed(*input, report.evaluated_threshold, options);
    report.tail = r.tail;
    report.shift = r.shift;
    report.convolved = r.convolved;
    return report;
  }
  report.tail = method_tails(method, *input, report.evaluated_threshold,
                             report.evaluated_threshold, options)
                    .front();
  return report;
}

}  // namespace shiftconv
