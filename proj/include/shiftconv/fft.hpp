#ifndef SHIFTCONV_FFT_HPP_
#define SHIFTCONV_FFT_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace shiftconv {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using RealVector = std::vector<double>;

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Smallest power of two that is >= n (n >= 1).
std::size_t next_power_of_two(std::size_t n);

/**
 * Radix-2 transform plan for one power-of-two size.
 *
 * Holds the bit-reversal permutation and, for every butterfly stage of half
 * width m, the twiddles e^{-i pi j / m} for j < m, laid out contiguously so a
 * stage walks its table linearly. The forward transform is
 * (Dx)(k) = sum_j x(j) e^{-2 pi i k j / n}; the inverse carries the 1/n factor.
 */
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const { return n_; }

  void forward(std::span<Complex> data) const;
  void inverse(std::span<Complex> data) const;

  /// Twiddles e^{-i pi j / m}, j < m, for a stage of half width m (m < n, power of two).
  std::span<const Complex> stage_twiddles(std::size_t m) const {
    return {twiddles_.data() + (m - 1), m};
  }

 private:
  template <bool Inverse>
  void transform(std::span<Complex> data) const;

  std::size_t n_;
  std::vector<std::uint32_t> bitrev_;
  std::vector<Complex> twiddles_;
};

/// Per-thread cached plan for size n (power of two).
const FftPlan& plan_for(std::size_t n);

ComplexVector dft_forward(std::span<const Complex> x);
ComplexVector dft_inverse(std::span<const Complex> y);

/// Real part of the inverse transform of a conjugate-symmetric spectrum, using
/// one half-length complex transform. The spectrum is projected onto its
/// Hermitian part; asymmetry is not reported.
RealVector real_inverse(std::span<const Complex> y);
void real_inverse_into(std::span<const Complex> y, std::span<double> out);

ComplexVector pointwise_multiply(std::span<const Complex> u, std::span<const Complex> v);
void pointwise_multiply_into(std::span<const Complex> u, std::span<const Complex> v,
                             std::span<Complex> out);

/// Linear convolution p*q of length |p|+|q|-1 through a zero-padded
/// power-of-two transform. An empty operand yields an empty result.
RealVector fft_convolve(std::span<const double> p, std::span<const double> q);

/**
 * Spectrum of u zero-padded to 2n, given the n-point spectrum of u.
 *
 * Even entries are copied from even_spectrum; odd entries are the n-point
 * transform of u(j) e^{-i pi j / n}. Costs one n-point transform instead of a
 * 2n-point one.
 */
ComplexVector spectrum_double(std::span<const double> u, std::span<const Complex> even_spectrum);
void spectrum_double_into(std::span<const double> u, std::span<const Complex> even_spectrum,
                          std::span<Complex> out);

}  // namespace shiftconv

#endif  // SHIFTCONV_FFT_HPP_
