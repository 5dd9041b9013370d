#include "shiftconv/fft.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

namespace shiftconv {
namespace {

// Plain complex product; std::complex operator* goes through the Annex G
// NaN-recovery path, which is several times slower and never needed here.
inline Complex cmul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

void require_power_of_two(std::size_t n, const char* what) {
  if (!is_power_of_two(n)) {
    throw std::invalid_argument(std::string(what) + ": length " + std::to_string(n) +
                                " is not a power of two");
  }
}

ComplexVector& scratch_buffer(std::size_t n, int slot) {
  thread_local std::array<ComplexVector, 2> buffers;
  auto& buffer = buffers[slot];
  if (buffer.size() < n) buffer.resize(n);
  return buffer;
}

}  // namespace

std::size_t next_power_of_two(std::size_t n) { return n <= 1 ? 1 : std::bit_ceil(n); }

FftPlan::FftPlan(std::size_t n) : n_(n), bitrev_(n), twiddles_(n - 1) {
  require_power_of_two(n, "FftPlan");
  const int bits = std::countr_zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t r = 0;
    for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
    bitrev_[i] = r;
  }
  for (std::size_t m = 1; m < n; m <<= 1) {
    Complex* stage = twiddles_.data() + (m - 1);
    for (std::size_t j = 0; j < m; ++j) {
      const double angle = -std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
      stage[j] = {std::cos(angle), std::sin(angle)};
    }
  }
}

template <bool Inverse>
void FftPlan::transform(std::span<Complex> data) const {
  if (data.size() != n_) {
    throw std::invalid_argument("FftPlan: buffer length does not match plan size");
  }
  Complex* a = data.data();
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j = bitrev_[i];
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t m = 1; m < n_; m <<= 1) {
    const Complex* w = twiddles_.data() + (m - 1);
    for (std::size_t k = 0; k < n_; k += 2 * m) {
      Complex* lo = a + k;
      Complex* hi = a + k + m;
      for (std::size_t j = 0; j < m; ++j) {
        const Complex tw = Inverse ? std::conj(w[j]) : w[j];
        const Complex t = cmul(tw, hi[j]);
        hi[j] = lo[j] - t;
        lo[j] += t;
      }
    }
  }
  if constexpr (Inverse) {
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) a[i] *= scale;
  }
}

void FftPlan::forward(std::span<Complex> data) const { transform<false>(data); }
void FftPlan::inverse(std::span<Complex> data) const { transform<true>(data); }

const FftPlan& plan_for(std::size_t n) {
  require_power_of_two(n, "plan_for");
  thread_local std::array<std::unique_ptr<FftPlan>, 64> cache;
  auto& slot = cache[std::countr_zero(n)];
  if (!slot) slot = std::make_unique<FftPlan>(n);
  return *slot;
}

ComplexVector dft_forward(std::span<const Complex> x) {
  require_power_of_two(x.size(), "dft_forward");
  ComplexVector out(x.begin(), x.end());
  plan_for(out.size()).forward(out);
  return out;
}

ComplexVector dft_inverse(std::span<const Complex> y) {
  require_power_of_two(y.size(), "dft_inverse");
  ComplexVector out(y.begin(), y.end());
  plan_for(out.size()).inverse(out);
  return out;
}

void real_inverse_into(std::span<const Complex> y, std::span<double> out) {
  const std::size_t n = y.size();
  require_power_of_two(n, "real_inverse");
  if (out.size() != n) throw std::invalid_argument("real_inverse: output length mismatch");
  if (n == 1) {
    out[0] = y[0].real();
    return;
  }
  // Split the Hermitian part H of y into the spectra E, O of the even and odd
  // samples, invert Z = E + iO at half length and read the samples back from
  // the real and imaginary parts.
  const std::size_t h = n / 2;
  const std::size_t mask = n - 1;
  const auto tw = plan_for(n).stage_twiddles(h);
  ComplexVector& z = scratch_buffer(h, 0);
  const auto hermitian = [&](std::size_t k) { return 0.5 * (y[k] + std::conj(y[(n - k) & mask])); };
  for (std::size_t k = 0; k < h; ++k) {
    const Complex a = hermitian(k);
    const Complex b = hermitian(k + h);
    const Complex even = 0.5 * (a + b);
    const Complex odd = cmul(0.5 * (a - b), std::conj(tw[k]));
    z[k] = {even.real() - odd.imag(), even.imag() + odd.real()};
  }
  std::span<Complex> zs(z.data(), h);
  plan_for(h).inverse(zs);
  for (std::size_t m = 0; m < h; ++m) {
    out[2 * m] = zs[m].real();
    out[2 * m + 1] = zs[m].imag();
  }
}

RealVector real_inverse(std::span<const Complex> y) {
  RealVector out(y.size());
  real_inverse_into(y, out);
  return out;
}

void pointwise_multiply_into(std::span<const Complex> u, std::span<const Complex> v,
                             std::span<Complex> out) {
  if (u.size() != v.size() || out.size() != u.size()) {
    throw std::invalid_argument("pointwise_multiply: length mismatch");
  }
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = cmul(u[i], v[i]);
}

ComplexVector pointwise_multiply(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw std::invalid_argument("pointwise_multiply: length mismatch");
  ComplexVector out(u.size());
  pointwise_multiply_into(u, v, out);
  return out;
}

RealVector fft_convolve(std::span<const double> p, std::span<const double> q) {
  if (p.empty() || q.empty()) return {};
  const std::size_t length = p.size() + q.size() - 1;
  const std::size_t padded = next_power_of_two(length);
  ComplexVector a(padded), b(padded);
  std::copy(p.begin(), p.end(), a.begin());
  std::copy(q.begin(), q.end(), b.begin());
  const FftPlan& plan = plan_for(padded);
  plan.forward(a);
  plan.forward(b);
  pointwise_multiply_into(a, b, a);
  RealVector out(padded);
  real_inverse_into(a, out);
  out.resize(length);
  return out;
}

void spectrum_double_into(std::span<const double> u, std::span<const Complex> even_spectrum,
                          std::span<Complex> out) {
  const std::size_t n = u.size();
  require_power_of_two(n, "spectrum_double");
  if (even_spectrum.size() != n || out.size() != 2 * n) {
    throw std::invalid_argument("spectrum_double: length mismatch");
  }
  const auto omega = plan_for(2 * n).stage_twiddles(n);  // e^{-i pi j / n}
  ComplexVector& w = scratch_buffer(n, 1);
  for (std::size_t j = 0; j < n; ++j) w[j] = u[j] * omega[j];
  std::span<Complex> ws(w.data(), n);
  plan_for(n).forward(ws);
  for (std::size_t k = 0; k < n; ++k) {
    out[2 * k] = even_spectrum[k];
    out[2 * k + 1] = ws[k];
  }
}

ComplexVector spectrum_double(std::span<const double> u, std::span<const Complex> even_spectrum) {
  ComplexVector out(2 * u.size());
  spectrum_double_into(u, even_spectrum, out);
  return out;
}

}  // namespace shiftconv
