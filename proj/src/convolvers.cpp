#include "shiftconv/convolvers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <thread>

#include "shiftconv/fft.hpp"

namespace shiftconv {
namespace {

Pmf delta_pmf(std::size_t offset) { return {{1.0}, {1.0}, offset}; }

Pmf finish(RealVector raw, std::size_t support, std::size_t offset) {
  raw.resize(support);
  Pmf out;
  out.values.resize(support);
  std::transform(raw.begin(), raw.end(), out.values.begin(),
                 [](double v) { return v > 0.0 ? v : 0.0; });
  out.raw = std::move(raw);
  out.support_offset = offset;
  return out;
}

// Runs fn(i) for i < count, split into contiguous chunks over `threads`
// workers. Every index writes its own output slot, so the result does not
// depend on scheduling.
template <typename Fn>
void for_each_index(std::size_t count, unsigned threads, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
  if (workers <= 1 || count < 16) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
}

// Spectra of (1-p, p, 0, 0), four entries per trial.
ComplexVector bernoulli_spectra(std::span<const double> probs) {
  ComplexVector level(4 * probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    const double q = 1.0 - p;
    Complex* s = level.data() + 4 * i;
    s[0] = {q + p, 0.0};
    s[1] = {q, -p};
    s[2] = {q - p, 0.0};
    s[3] = {q, p};
  }
  return level;
}

enum class TreeVariant { kPlain, kFrugal };

// Shared level structure of the pair-aggregated engines. `level` holds
// `count` spectra of length `n` back to back.
template <TreeVariant Variant>
RealVector pair_tree(std::span<const double> probs, const TreeOptions& options) {
  ComplexVector level = bernoulli_spectra(probs);
  std::size_t count = probs.size();
  std::size_t n = 4;

  while (count > 2) {
    if (count % 2 == 1) {
      level.resize(level.size() + n, Complex{1.0, 0.0});
      ++count;
    }
    const std::size_t pairs = count / 2;
    ComplexVector next(pairs * 2 * n);
    for_each_index(pairs, options.threads, [&](std::size_t i) {
      std::span<const Complex> a(level.data() + 2 * i * n, n);
      std::span<const Complex> b(level.data() + (2 * i + 1) * n, n);
      std::span<Complex> out(next.data() + i * 2 * n, 2 * n);
      if constexpr (Variant == TreeVariant::kPlain) {
        std::span<Complex> head = out.first(n);
        pointwise_multiply_into(a, b, head);
        plan_for(n).inverse(head);
        std::fill(out.begin() + n, out.end(), Complex{});
        plan_for(2 * n).forward(out);
      } else {
        thread_local ComplexVector product;
        thread_local RealVector samples;
        product.resize(n);
        samples.resize(n);
        pointwise_multiply_into(a, b, product);
        real_inverse_into(product, samples);
        spectrum_double_into(samples, product, out);
      }
    });
    level = std::move(next);
    count = pairs;
    n *= 2;
  }

  ComplexVector last(level.begin(), level.begin() + n);
  if (count == 2) {
    pointwise_multiply_into(last, std::span<const Complex>(level.data() + n, n), last);
  }
  if constexpr (Variant == TreeVariant::kPlain) {
    plan_for(n).inverse(last);
    RealVector out(n);
    std::transform(last.begin(), last.end(), out.begin(), [](Complex c) { return c.real(); });
    return out;
  } else {
    return real_inverse(last);
  }
}

template <TreeVariant Variant>
Pmf pair_engine(const PreprocessedInput& in, const TreeOptions& options) {
  if (in.core_size() == 0) return delta_pmf(in.ones_count);
  return finish(pair_tree<Variant>(in.core_probs, options), in.core_size() + 1, in.ones_count);
}

std::vector<double> direct_values(std::span<const double> probs) {
  std::vector<double> c(probs.size() + 1, 0.0);
  c[0] = 1.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const double p = probs[k];
    const double q = 1.0 - p;
    for (std::size_t j = k + 1; j > 0; --j) c[j] = c[j] * q + c[j - 1] * p;
    c[0] *= q;
  }
  return c;
}

}  // namespace

Pmf direct_convolution(const PreprocessedInput& in) {
  auto values = direct_values(in.core_probs);
  return {values, values, in.ones_count};
}

LogPmf direct_convolution_logspace(const PreprocessedInput& in) {
  const auto& probs = in.core_probs;
  std::vector<double> c(probs.size() + 1, kNegInf);
  c[0] = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const double log_p = std::log(probs[k]);
    const double log_q = std::log1p(-probs[k]);
    for (std::size_t j = k + 1; j > 0; --j) c[j] = log_add_exp(c[j] + log_q, c[j - 1] + log_p);
    c[0] += log_q;
  }
  return {std::move(c), in.ones_count};
}

Pmf pair_aggregated_fft(const PreprocessedInput& in, const TreeOptions& options) {
  return pair_engine<TreeVariant::kPlain>(in, options);
}

Pmf frugal_pair_aggregated(const PreprocessedInput& in, const TreeOptions& options) {
  return pair_engine<TreeVariant::kFrugal>(in, options);
}

Pmf dc_fft(const PreprocessedInput& in, GroupParameter m) {
  const std::size_t n = in.core_size();
  if (n == 0) return delta_pmf(in.ones_count);
  if (m.groups < 1 || m.groups > n) {
    throw std::invalid_argument("dc_fft: group count " + std::to_string(m.groups) +
                                " outside [1, " + std::to_string(n) + "]");
  }
  const std::size_t block = (n + m.groups - 1) / m.groups;
  const std::span<const double> probs(in.core_probs);
  std::vector<RealVector> parts;
  for (std::size_t start = 0; start < n; start += block) {
    parts.push_back(direct_values(probs.subspan(start, std::min(block, n - start))));
  }
  while (parts.size() > 1) {
    std::vector<RealVector> next;
    next.reserve((parts.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
      next.push_back(fft_convolve(parts[i], parts[i + 1]));
    }
    if (parts.size() % 2 == 1) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  return finish(std::move(parts.front()), n + 1, in.ones_count);
}

GroupParameter heuristic_m(std::size_t n) {
  if (n == 0) throw std::invalid_argument("heuristic_m: N must be positive");
  const double exponent = std::nearbyint(std::log2(static_cast<double>(n) / 750.0));
  std::size_t m = 2;
  if (exponent > 1.0) m = static_cast<std::size_t>(std::ldexp(1.0, static_cast<int>(exponent)));
  return {std::min(m, n)};
}

Pmf dft_cf_pmf(const PreprocessedInput& in) {
  const std::size_t core = in.core_size();
  if (core == 0) return delta_pmf(in.ones_count);
  const std::size_t n = core + 1;
  ComplexVector roots(n);  // e^{-2 pi i m / n}
  for (std::size_t m = 0; m < n; ++m) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
    roots[m] = {std::cos(angle), std::sin(angle)};
  }

  // phi(l) = prod_j (1 - p_j + p_j e^{2 pi i l / n}); the upper half of the
  // grid is the conjugate of the lower half.
  const std::size_t half = n / 2;
  ComplexVector phi(half + 1);
  for (std::size_t l = 0; l <= half; ++l) {
    const Complex z = std::conj(roots[l]);
    Complex acc{1.0, 0.0};
    for (double p : in.core_probs) {
      const Complex factor{1.0 - p + p * z.real(), p * z.imag()};
      acc = {acc.real() * factor.real() - acc.imag() * factor.imag(),
             acc.real() * factor.imag() + acc.imag() * factor.real()};
    }
    phi[l] = acc;
  }

  RealVector raw(n);
  for (std::size_t k = 0; k < n; ++k) {
    double sum = phi[0].real();
    std::size_t index = 0;
    for (std::size_t l = 1; l <= half; ++l) {
      index += k;
      if (index >= n) index -= n;
      const Complex w = roots[index];
      const double term = phi[l].real() * w.real() - phi[l].imag() * w.imag();
      sum += (2 * l == n) ? term : 2.0 * term;
    }
    raw[k] = sum / static_cast<double>(n);
  }
  return finish(std::move(raw), n, in.ones_count);
}

LogPmf to_log_pmf(const Pmf& pmf) {
  LogPmf out;
  out.support_offset = pmf.support_offset;
  out.log_values.resize(pmf.size());
  std::transform(pmf.values.begin(), pmf.values.end(), out.log_values.begin(),
                 [](double v) { return v > 0.0 ? std::log(v) : kNegInf; });
  return out;
}

ShiftConvolveResult shift_convolve_with(const PreprocessedInput& in, const ShiftParameters& shift,
                                        const TreeOptions& options) {
  const PreprocessedInput tilted = shift_probabilities(in, shift.theta);
  ShiftConvolveResult out;
  out.shift = shift;
  out.pmf = unshift_log_pmf(to_log_pmf(frugal_pair_aggregated(tilted, options)), shift);
  out.log_mass = log_total_mass(out.pmf);
  return out;
}

ShiftConvolveResult shift_convolve(const ProbabilityVector& pv, std::int64_t s0,
                                   bool shift_enabled, const TreeOptions& options) {
  const PreprocessedInput in = preprocess(pv);
  ShiftParameters shift;
  if (shift_enabled) {
    const auto n = static_cast<std::int64_t>(pv.size());
    if (s0 < 0 || s0 > n) {
      throw std::invalid_argument("shift_convolve: s0=" + std::to_string(s0) + " outside [0, " +
                                  std::to_string(n) + "]");
    }
    const auto core = static_cast<double>(in.core_size());
    if (in.core_size() > 0) {
      const double target =
          std::clamp(static_cast<double>(s0) - static_cast<double>(in.ones_count), 0.5, core - 0.5);
      shift = solve_theta(in, target);
    }
  }
  return shift_convolve_with(in, shift, options);
}

LogPmf shift_convolve_pmf(const ProbabilityVector& pv, std::int64_t s0, bool shift_enabled) {
  return shift_convolve(pv, s0, shift_enabled).pmf;
}

TailResult shift_convolve_tail_detailed(const ProbabilityVector& pv, std::int64_t s0,
                                        const TreeOptions& options) {
  const auto n = static_cast<std::int64_t>(pv.size());
  if (s0 < 0 || s0 > n + 1) {
    throw std::invalid_argument("shift_convolve_tail: s0=" + std::to_string(s0) +
                                " outside [0, " + std::to_string(n + 1) + "]");
  }
  const PreprocessedInput in = preprocess(pv);
  const std::int64_t target = s0 - static_cast<std::int64_t>(in.ones_count);
  const auto core = static_cast<std::int64_t>(in.core_size());
  TailResult out;
  if (target <= 0) {
    out.tail = {0.0};
    return out;
  }
  if (target > core) {
    out.tail = {kNegInf};
    return out;
  }
  if (target == core) {
    double sum = 0.0;
    for (double p : in.core_probs) sum += std::log(p);
    out.tail = {sum};
    return out;
  }

  const double mean = shifted_mean(0.0, in);
  if (static_cast<double>(target) > mean) out.shift = solve_theta(in, static_cast<double>(target));
  const ShiftConvolveResult result = shift_convolve_with(in, out.shift, options);
  out.tail = {std::min(0.0, log_tail_sum(result.pmf, s0).log_p)};
  out.convolved = true;
  return out;
}

LogProbability shift_convolve_tail(const ProbabilityVector& pv, std::int64_t s0) {
  return shift_convolve_tail_detailed(pv, s0).tail;
}

}  // namespace shiftconv
