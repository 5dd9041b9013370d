#include "shiftconv/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "shiftconv/experiments.hpp"
#include "shiftconv/generate.hpp"
#include "shiftconv/io.hpp"
#include "shiftconv/methods.hpp"

namespace shiftconv {
namespace {

struct InputFlags {
  std::string probs_path;
  std::string gen_spec;
};

void add_input_flags(CLI::App* cmd, InputFlags& flags) {
  auto* probs = cmd->add_option("--probs", flags.probs_path, "file with one probability per line");
  auto* gen = cmd->add_option("--gen", flags.gen_spec, "generator family:N:seed[:params]");
  probs->excludes(gen);
}

ProbabilityVector load_input(const InputFlags& flags) {
  if (!flags.probs_path.empty()) return parse_probabilities(flags.probs_path);
  if (!flags.gen_spec.empty()) return generate_probabilities(parse_generator_spec(flags.gen_spec));
  throw InputError("one of --probs or --gen is required");
}

// Output goes to --out when given, otherwise to the caller's stream.
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw InputError(fmt::format("{}: cannot open for writing", path));
    stream_ = &file_;
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::int64_t parse_int(std::string_view token, std::string_view what) {
  std::int64_t v = 0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc() || end != token.data() + token.size()) {
    throw InputError(fmt::format("{}: cannot parse '{}' as an integer", what, token));
  }
  return v;
}

// "4096" or "2^12".
std::size_t parse_size(std::string_view token) {
  if (const auto caret = token.find('^'); caret != std::string_view::npos) {
    const auto base = parse_int(token.substr(0, caret), "--sizes");
    const auto exponent = parse_int(token.substr(caret + 1), "--sizes");
    if (base != 2 || exponent < 0 || exponent > 40) {
      throw InputError(fmt::format("--sizes: unsupported power '{}'", token));
    }
    return std::size_t{1} << exponent;
  }
  const auto v = parse_int(token, "--sizes");
  if (v < 1) throw InputError(fmt::format("--sizes: '{}' is not positive", token));
  return static_cast<std::size_t>(v);
}

// Comma list of sizes; an item a..b with power-of-two ends expands to every
// power of two between them.
std::vector<std::size_t> parse_sizes(std::string_view list) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = list.find(',', start);
    const auto item = list.substr(start, comma == std::string_view::npos ? comma : comma - start);
    if (const auto dots = item.find(".."); dots != std::string_view::npos) {
      const std::size_t lo = parse_size(item.substr(0, dots));
      const std::size_t hi = parse_size(item.substr(dots + 2));
      if ((lo & (lo - 1)) != 0 || (hi & (hi - 1)) != 0 || lo > hi) {
        throw InputError(fmt::format("--sizes: range '{}' needs power-of-two ends", item));
      }
      for (std::size_t n = lo; n <= hi; n *= 2) out.push_back(n);
    } else {
      out.push_back(parse_size(item));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// "lo:hi", inclusive.
std::pair<std::int64_t, std::int64_t> parse_range(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InputError(fmt::format("--s0-range: expected LO:HI, got '{}'", text));
  }
  const auto lo = parse_int(text.substr(0, colon), "--s0-range");
  const auto hi = parse_int(text.substr(colon + 1), "--s0-range");
  if (lo > hi) throw InputError("--s0-range: LO must not exceed HI");
  return {lo, hi};
}

nlohmann::json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

int cmd_tail(const InputFlags& input, std::int64_t s0, const std::string& method_name, bool left,
             bool json, unsigned threads, std::ostream& out) {
  const Method method = parse_method(method_name);
  const ProbabilityVector pv = load_input(input);
  const TailReport report = method_tail(method, pv, s0, left, TreeOptions{threads});
  const double log_p = report.tail.log_p;
  const double linear = report.tail.linear();
  const bool underflow = linear == 0.0 && log_p != kNegInf;

  if (json) {
    nlohmann::json diagnostics = {
        {"tail", left ? "left" : "right"},
        {"N", pv.size()},
        {"evaluated_threshold", report.evaluated_threshold},
        {"convolved", report.convolved},
    };
    if (report.shift) {
      diagnostics["theta"] = report.shift->theta;
      diagnostics["log_mgf"] = report.shift->log_mgf;
    }
    nlohmann::json doc = {
        {"method", method.name()},
        {"s0", s0},
        {"log_p", finite_or_null(log_p)},
        {"log10_p", finite_or_null(report.tail.log10())},
        {"linear_p", underflow ? nlohmann::json(nullptr) : nlohmann::json(linear)},
        {"diagnostics", diagnostics},
    };
    out << doc.dump() << '\n';
    return kExitOk;
  }
  out << "method: " << method.name() << '\n';
  out << "tail: " << (left ? "left" : "right") << '\n';
  out << "s0: " << s0 << '\n';
  out << "log_p: " << format_double(log_p) << '\n';
  out << "log10_p: " << format_double(report.tail.log10()) << '\n';
  out << "p: " << (underflow ? std::string("underflow") : format_double(linear)) << '\n';
  return kExitOk;
}

int cmd_pmf(const InputFlags& input, std::optional<std::int64_t> s0, const std::string& method_name,
            unsigned threads, std::ostream& out) {
  const Method method = parse_method(method_name);
  if (s0 && method.kind != MethodKind::kShiftConvolve) {
    throw InputError("--s0 only applies to --method shiftconvolve");
  }
  const ProbabilityVector pv = load_input(input);
  if (s0 && (*s0 < 0 || *s0 > static_cast<std::int64_t>(pv.size()))) {
    throw InputError(fmt::format("s0={} outside [0, {}]", *s0, pv.size()));
  }
  const MethodPmf pmf = method_pmf(method, pv, s0, TreeOptions{threads});
  out << "k,log_value,raw_value\n";
  for (std::size_t k = 0; k < pmf.log_pmf.size(); ++k) {
    out << k << ',' << format_double(pmf.log_pmf.log_values[k]) << ',' << format_double(pmf.raw[k])
        << '\n';
  }
  return kExitOk;
}

int cmd_compare(const InputFlags& input, const std::string& methods_list,
                const std::string& range_text, std::ostream& out) {
  const auto methods = parse_method_list(methods_list);
  const ProbabilityVector pv = load_input(input);
  const auto n = static_cast<std::int64_t>(pv.size());
  auto [lo, hi] = range_text.empty() ? std::pair<std::int64_t, std::int64_t>{0, n}
                                     : parse_range(range_text);
  if (lo < 0 || hi > n + 1) {
    throw InputError(fmt::format("--s0-range {}:{} outside [0, {}]", lo, hi, n + 1));
  }
  write_comparison_csv(out, methods, compare_methods(pv, methods, lo, hi));
  return kExitOk;
}

int cmd_bench(const std::string& sizes, const std::string& methods_list, std::size_t reps,
              std::uint64_t seed, unsigned threads, std::ostream& out, std::ostream& err) {
  BenchConfig config;
  config.sizes = parse_sizes(sizes);
  config.methods = parse_method_list(methods_list);
  config.reps = reps;
  config.seed = seed;
  config.threads = threads;
  const auto rows = run_bench(config);
  write_bench_csv(out, rows);
  for (const Method& m : config.methods) {
    const double slope = fit_loglog_slope(rows, m.name());
    err << "slope " << m.name() << ": " << (std::isnan(slope) ? "n/a" : format_double(slope))
        << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Poisson-binomial tail probabilities via exponentially shifted FFT convolution",
               "shiftconv"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "write CSV/JSON here instead of stdout");

  InputFlags tail_input, pmf_input, compare_input;
  std::int64_t tail_s0 = 0;
  std::string tail_method = "shiftconvolve";
  bool tail_left = false;
  bool tail_json = false;
  unsigned threads = 1;
  auto* tail = app.add_subcommand("tail", "log P(X >= s0), or P(X <= s0) with --left");
  add_input_flags(tail, tail_input);
  tail->add_option("--s0", tail_s0, "threshold")->required();
  tail->add_option("--method", tail_method, "engine");
  tail->add_flag("--left", tail_left, "left tail P(X <= s0)");
  tail->add_flag("--json", tail_json, "emit one JSON object");
  tail->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  tail->add_option("--out", out_path, "output file");

  std::optional<std::int64_t> pmf_s0;
  std::string pmf_method = "shiftconvolve";
  auto* pmf = app.add_subcommand("pmf", "full pmf as CSV k,log_value,raw_value");
  add_input_flags(pmf, pmf_input);
  pmf->add_option("--s0", pmf_s0, "tilt the shiftconvolve pmf towards s0");
  pmf->add_option("--method", pmf_method, "engine");
  pmf->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  pmf->add_option("--out", out_path, "output file");

  std::string compare_methods_list;
  std::string compare_range;
  auto* compare = app.add_subcommand("compare", "tails and relative errors against dc-log");
  add_input_flags(compare, compare_input);
  compare->add_option("--methods", compare_methods_list, "comma separated engines")->required();
  compare->add_option("--s0-range", compare_range, "LO:HI inclusive, default 0:N");
  compare->add_option("--out", out_path, "output file");

  std::string bench_sizes;
  std::string bench_methods;
  std::size_t bench_reps = 10;
  std::uint64_t bench_seed = 1;
  auto* bench = app.add_subcommand("bench", "mean engine runtime per size");
  bench->add_option("--sizes", bench_sizes, "e.g. 4096,2^13 or 2^12..2^17")->required();
  bench->add_option("--methods", bench_methods, "comma separated engines")->required();
  bench->add_option("--reps", bench_reps, "repetitions per size")->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed, "seed for the random inputs");
  bench->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--out", out_path, "output file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    err << "usage error: " << message << '\n';
    return kExitUsage;
  }

  try {
    OutputTarget target(out_path, out);
    std::ostream& sink = target.get();
    if (*tail) return cmd_tail(tail_input, tail_s0, tail_method, tail_left, tail_json, threads, sink);
    if (*pmf) return cmd_pmf(pmf_input, pmf_s0, pmf_method, threads, sink);
    if (*compare) return cmd_compare(compare_input, compare_methods_list, compare_range, sink);
    if (*bench) {
      return cmd_bench(bench_sizes, bench_methods, bench_reps, bench_seed, threads, sink, err);
    }
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace shiftconv
