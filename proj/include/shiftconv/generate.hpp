#ifndef SHIFTCONV_GENERATE_HPP_
#define SHIFTCONV_GENERATE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "shiftconv/pbd.hpp"

namespace shiftconv {

enum class Family { kUniform, kBeta, kMixture };

struct BetaShape {
  double a = 1.0;
  double b = 1.0;
};

struct MixtureComponent {
  double weight = 0.5;
  BetaShape shape;
};

struct GeneratorSpec {
  Family family = Family::kUniform;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  BetaShape beta;                            // kBeta
  std::array<MixtureComponent, 2> mixture;  // kMixture
};

/**
 * Parses `family:N:seed[:params]`.
 *
 *   uniform:N:seed
 *   beta:N:seed:a:b
 *   mixture:N:seed:w1:a1:b1:w2:a2:b2
 *
 * The seed may be written `42` or `seed42`. Throws InputError on anything
 * else, on non-positive shapes and on weights not summing to 1.
 */
GeneratorSpec parse_generator_spec(std::string_view text);

std::string to_string(const GeneratorSpec& spec);

/// Seeded sampler used by every generator family.
///
/// Uniforms are (x >> 11) * 2^-53 over a mt19937_64 stream, so [0, 1).
/// Normals use the Marsaglia polar method. Gamma(a) uses Marsaglia-Tsang
/// squeeze/rejection for a >= 1 and the U^(1/a) boost from Gamma(a + 1) for
/// a < 1. Beta(a, b) = X / (X + Y) with X ~ Gamma(a), Y ~ Gamma(b).
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  /// (0, 1], for logs and powers.
  double uniform_open_zero() { return 1.0 - uniform(); }
  double normal();
  double gamma(double shape);
  double beta(BetaShape shape);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// Deterministic in the spec. Beta draws may round to exactly 0 or 1.
ProbabilityVector generate_probabilities(const GeneratorSpec& spec);

}  // namespace shiftconv

#endif  // SHIFTCONV_GENERATE_HPP_
