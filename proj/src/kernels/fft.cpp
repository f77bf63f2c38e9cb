#include "fivesq/kernels/fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fivesq::kernels {
namespace {

using cplx = std::complex<double>;

unsigned log2_exact(std::size_t n) {
  if (n == 0 || !std::has_single_bit(n)) throw std::invalid_argument("transform size must be a power of two");
  return static_cast<unsigned>(std::countr_zero(n));
}

std::size_t bit_reverse(std::size_t x, unsigned bits) {
  std::size_t r = 0;
  for (unsigned i = 0; i < bits; ++i) {
    r = (r << 1) | (x & 1);
    x >>= 1;
  }
  return r;
}

std::vector<cplx> twiddles(std::size_t n, bool inverse, bool parallel) {
  std::vector<cplx> w(std::max<std::size_t>(n / 2, 1));
  const double sign = inverse ? 1.0 : -1.0;
  const std::int64_t count = static_cast<std::int64_t>(w.size());
#pragma omp parallel for if (parallel) schedule(static)
  for (std::int64_t j = 0; j < count; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    w[static_cast<std::size_t>(j)] = cplx(std::cos(angle), sign * std::sin(angle));
  }
  return w;
}

}  // namespace

namespace serial {

void fft(std::span<cplx> a, bool inverse) {
  const std::size_t n = a.size();
  const unsigned lg = log2_exact(n);
  const std::vector<cplx> w = twiddles(n, inverse, false);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = bit_reverse(i, lg);
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = n / len;
    for (std::size_t base = 0; base < n; base += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const cplx u = a[base + j];
        const cplx v = a[base + j + half] * w[j * stride];
        a[base + j] = u + v;
        a[base + j + half] = u - v;
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& x : a) x *= scale;
  }
}

}  // namespace serial

namespace omp {

void fft(std::span<cplx> a, bool inverse) {
  const std::size_t n = a.size();
  const unsigned lg = log2_exact(n);
  const std::vector<cplx> w = twiddles(n, inverse, true);
  const std::int64_t sn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < sn; ++i) {
    const std::size_t ui = static_cast<std::size_t>(i);
    const std::size_t j = bit_reverse(ui, lg);
    if (ui < j) std::swap(a[ui], a[j]);
  }
  const std::int64_t butterflies = sn / 2;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = n / len;
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < butterflies; ++k) {
      const std::size_t uk = static_cast<std::size_t>(k);
      const std::size_t j = uk & (half - 1);
      const std::size_t pos = (uk - j) * 2 + j;
      const cplx u = a[pos];
      const cplx v = a[pos + half] * w[j * stride];
      a[pos] = u + v;
      a[pos + half] = u - v;
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < sn; ++i) a[static_cast<std::size_t>(i)] *= scale;
  }
}

}  // namespace omp

std::vector<double> convolve_real(std::span<const double> x, std::span<const double> y, std::size_t out_len,
                                  bool parallel) {
  if (out_len == 0) return {};
  const std::size_t n = std::bit_ceil(std::max<std::size_t>(2 * out_len, 2));
  std::vector<cplx> fx(n), fy(n);
  for (std::size_t i = 0; i < std::min(x.size(), out_len); ++i) fx[i] = x[i];
  for (std::size_t i = 0; i < std::min(y.size(), out_len); ++i) fy[i] = y[i];
  auto transform = [&](std::vector<cplx>& v, bool inverse) {
    if (parallel) {
      omp::fft(v, inverse);
    } else {
      serial::fft(v, inverse);
    }
  };
  transform(fx, false);
  transform(fy, false);
  for (std::size_t i = 0; i < n; ++i) fx[i] *= fy[i];
  transform(fx, true);
  std::vector<double> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = fx[i].real();
  return out;
}

double fft_error_factor(std::size_t n) {
  // Percival-style bound: three transforms of depth log2(n), each butterfly
  // contributing one rounding, a sqrt(5)-weighted complex multiply, and a
  // twiddle error of a few ulps.
  const double eps = std::ldexp(1.0, -53);
  const double twiddle = 4.0 * eps;
  const double depth = static_cast<double>(log2_exact(std::bit_ceil(std::max<std::size_t>(n, 2))));
  const double log_growth = 3.0 * depth * std::log1p(eps) + (3.0 * depth + 1.0) * std::log1p(std::sqrt(5.0) * eps) +
                            3.0 * depth * std::log1p(twiddle);
  return std::expm1(log_growth) * 1.01;
}

}  // namespace fivesq::kernels
