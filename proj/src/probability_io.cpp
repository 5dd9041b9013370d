#include "shiftconv/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string_view>

#include <fmt/format.h>

namespace shiftconv {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

ProbabilityVector parse_probabilities(std::istream& in, const std::string& source_name) {
  ProbabilityVector pv;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;

    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
      throw InputError(fmt::format("{}: line {}: cannot parse '{}' as a probability", source_name,
                                   line_number, text));
    }
    if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
      throw InputError(fmt::format("{}: line {}: probability {} is outside [0, 1]", source_name,
                                   line_number, text));
    }
    pv.probs.push_back(value);
  }
  if (in.bad()) throw InputError(fmt::format("{}: read error", source_name));
  return pv;
}

ProbabilityVector parse_probabilities(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("{}: cannot open file", path));
  return parse_probabilities(in, path);
}

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

}  // namespace shiftconv
