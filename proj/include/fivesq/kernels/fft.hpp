#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace fivesq::kernels {

// Radix-2 complex transform, size a power of two. Twiddles are evaluated
// directly with cos/sin (no recurrence), so each carries at most a few ulps.
namespace serial {
void fft(std::span<std::complex<double>> a, bool inverse);
}  // namespace serial

namespace omp {
void fft(std::span<std::complex<double>> a, bool inverse);
}  // namespace omp

// First out_len coefficients of the linear convolution x * y, by transform.
std::vector<double> convolve_real(std::span<const double> x, std::span<const double> y, std::size_t out_len,
                                  bool parallel);

// Relative factor in the a posteriori bound
//   |fl(x*y) - x*y|_inf <= |x|_2 |y|_2 * fft_error_factor(n)
// for a length-n transform convolution with directly evaluated twiddles.
double fft_error_factor(std::size_t n);

}  // namespace fivesq::kernels
