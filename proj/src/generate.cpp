#include "shiftconv/generate.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "shiftconv/io.hpp"

namespace shiftconv {
namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view token, std::string_view what, std::string_view spec) {
  T value{};
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || end != token.data() + token.size()) {
    throw InputError(fmt::format("generator '{}': bad {} '{}'", spec, what, token));
  }
  return value;
}

double parse_shape(std::string_view token, std::string_view what, std::string_view spec) {
  const auto v = parse_number<double>(token, what, spec);
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InputError(fmt::format("generator '{}': {} must be positive", spec, what));
  }
  return v;
}

}  // namespace

GeneratorSpec parse_generator_spec(std::string_view text) {
  const auto tokens = split(text, ':');
  if (tokens.size() < 3) {
    throw InputError(fmt::format("generator '{}': expected family:N:seed[:params]", text));
  }
  GeneratorSpec spec;
  const std::string_view family = tokens[0];
  std::size_t expected = 0;
  if (family == "uniform") {
    spec.family = Family::kUniform;
    expected = 3;
  } else if (family == "beta") {
    spec.family = Family::kBeta;
    expected = 5;
  } else if (family == "mixture") {
    spec.family = Family::kMixture;
    expected = 9;
  } else {
    throw InputError(fmt::format("generator '{}': unknown family '{}'", text, family));
  }
  if (tokens.size() != expected) {
    throw InputError(fmt::format("generator '{}': family {} takes {} fields, got {}", text, family,
                                 expected, tokens.size()));
  }

  spec.n = parse_number<std::size_t>(tokens[1], "N", text);
  std::string_view seed = tokens[2];
  if (seed.starts_with("seed")) seed.remove_prefix(4);
  spec.seed = parse_number<std::uint64_t>(seed, "seed", text);

  if (spec.family == Family::kBeta) {
    spec.beta = {parse_shape(tokens[3], "a", text), parse_shape(tokens[4], "b", text)};
  } else if (spec.family == Family::kMixture) {
    for (std::size_t c = 0; c < 2; ++c) {
      auto& comp = spec.mixture[c];
      comp.weight = parse_number<double>(tokens[3 + 3 * c], "weight", text);
      if (!(comp.weight >= 0.0 && comp.weight <= 1.0)) {
        throw InputError(fmt::format("generator '{}': weight outside [0, 1]", text));
      }
      comp.shape = {parse_shape(tokens[4 + 3 * c], "a", text),
                    parse_shape(tokens[5 + 3 * c], "b", text)};
    }
    if (std::abs(spec.mixture[0].weight + spec.mixture[1].weight - 1.0) > 1e-12) {
      throw InputError(fmt::format("generator '{}': mixture weights must sum to 1", text));
    }
  }
  return spec;
}

std::string to_string(const GeneratorSpec& spec) {
  switch (spec.family) {
    case Family::kUniform:
      return fmt::format("uniform:{}:{}", spec.n, spec.seed);
    case Family::kBeta:
      return fmt::format("beta:{}:{}:{}:{}", spec.n, spec.seed, spec.beta.a, spec.beta.b);
    case Family::kMixture:
      return fmt::format("mixture:{}:{}:{}:{}:{}:{}:{}:{}", spec.n, spec.seed,
                         spec.mixture[0].weight, spec.mixture[0].shape.a, spec.mixture[0].shape.b,
                         spec.mixture[1].weight, spec.mixture[1].shape.a, spec.mixture[1].shape.b);
  }
  return {};
}

double Sampler::uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }

double Sampler::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u = 0.0, v = 0.0, s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

double Sampler::gamma(double shape) {
  if (shape < 1.0) {
    // Gamma(a) = Gamma(a + 1) * U^(1/a)
    const double boost = std::pow(uniform_open_zero(), 1.0 / shape);
    return gamma(shape + 1.0) * boost;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x = 0.0, v = 0.0;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open_zero();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Sampler::beta(BetaShape shape) {
  while (true) {
    const double x = gamma(shape.a);
    const double y = gamma(shape.b);
    if (x + y > 0.0) return x / (x + y);
  }
}

ProbabilityVector generate_probabilities(const GeneratorSpec& spec) {
  Sampler sampler(spec.seed);
  ProbabilityVector pv;
  pv.probs.resize(spec.n);
  for (double& p : pv.probs) {
    switch (spec.family) {
      case Family::kUniform:
        p = sampler.uniform();
        break;
      case Family::kBeta:
        p = sampler.beta(spec.beta);
        break;
      case Family::kMixture: {
        const auto& comp = sampler.uniform() < spec.mixture[0].weight ? spec.mixture[0]
                                                                      : spec.mixture[1];
        p = sampler.beta(comp.shape);
        break;
      }
    }
  }
  return pv;
}

}  // namespace shiftconv
