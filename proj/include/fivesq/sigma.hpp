#pragma once

// The oscillating density factor
//   sigma = sum_m exp(2 pi i m (eta N - 5(a+b)/2)) sin^5(pi m L) / (pi m)^5,
// L = b - a, evaluated by its truncated Fourier series and, independently,
// as the periodized 5-fold box convolution (Irwin-Hall closed form).

#include <cstdint>
#include <utility>
#include <vector>

#include "fivesq/diophantine.hpp"
#include "fivesq/kernels/exec.hpp"
#include "fivesq/window.hpp"

namespace fivesq {

inline constexpr int kSigmaArgumentBits = 96;

struct SigmaEvaluation {
  double value = 0.0;
  std::uint64_t m_cut = 0;
  double tail_bound = 0.0;
  // Imaginary part of the symmetric partial sum, checked then discarded.
  double imag_residue = 0.0;
  // {eta N}; sigma depends on N only through this.
  FixedPointReal theta{Integer(0), 0, 0};
  // {eta N - 5(a+b)/2}, the phase the series is evaluated at.
  FixedPointReal phase{Integer(0), 0, 0};
};

// Coefficients of the series for one window, reused across N.
class SigmaSeries {
 public:
  SigmaSeries(const Window& w, double tol);

  std::uint64_t m_cut() const { return static_cast<std::uint64_t>(coeff_.size() - 1); }
  double tail_bound() const { return tail_bound_; }
  // Real coefficient of exp(2 pi i m phase); index 0 is the limit L^5.
  double coefficient(std::uint64_t m) const { return coeff_.at(m); }
  // Series at the shifted phase; writes the imaginary residue if asked.
  double at_phase(double phase, double* imag_residue = nullptr) const;
  // Series as a function of theta = {eta N}.
  double at_theta(double theta) const;
  double center() const { return center_; }

 private:
  std::vector<double> coeff_;
  double tail_bound_ = 0.0;
  double center_ = 0.0;  // 5(a+b)/2 mod 1
};

// Smallest truncation index whose tail bound 1/(2 pi^5 M^4) is <= tol.
std::uint64_t sigma_truncation(double tol);

SigmaEvaluation sigma_series(const QuadraticIrrational& eta, std::uint64_t n, const Window& w, double tol);

// Order-5 Irwin-Hall density on [0, 5].
double irwin_hall5_density(double x);

// L^4 * sum_j f5((theta - 5a + j) / L), theta = {eta N}.
double sigma_oracle(double theta, const Window& w);

std::vector<std::pair<std::uint64_t, SigmaEvaluation>> sigma_profile(const QuadraticIrrational& eta,
                                                                     const Window& w,
                                                                     const std::vector<std::uint64_t>& ns,
                                                                     double tol, Exec exec = Exec::Parallel);

}  // namespace fivesq
