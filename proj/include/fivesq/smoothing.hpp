#pragma once

// Smoothed periodic indicators ("cups"): the indicator of [alpha, beta]
// convolved r times with a centered box of width delta/r. The result is 1 on
// [alpha + delta/2, beta - delta/2], 0 outside (alpha - delta/2, beta + delta/2),
// and its Fourier coefficients decay like |m|^-(r+1).

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "fivesq/diophantine.hpp"
#include "fivesq/window.hpp"

namespace fivesq {

struct CupFunction {
  Rational alpha;
  Rational beta;
  Rational delta;
  unsigned r = 1;

  Rational plateau_lo() const { return alpha + delta / 2; }
  Rational plateau_hi() const { return beta - delta / 2; }
  Rational support_lo() const { return alpha - delta / 2; }
  Rational support_hi() const { return beta + delta / 2; }
};

// Throws InvalidGeometry unless alpha < beta, 0 < delta < beta - alpha and
// beta - alpha + delta < 1.
CupFunction make_cup(const Rational& alpha, const Rational& beta, const Rational& delta, unsigned r);

// CDF of the sum of r independent uniforms on [-h/2, h/2], h = delta / r.
Rational smoothing_kernel_cdf(const Rational& t, const Rational& delta, unsigned r);

// Exact value of the cup at x (taken mod 1).
Rational cup_eval(const CupFunction& c, const Rational& x);

std::complex<double> cup_fourier_coeff(const CupFunction& c, std::int64_t m);

// min(beta - alpha, 1/(pi|m|), (1/(pi|m|)) (r/(pi|m|delta))^r)
double cup_coeff_majorant(const CupFunction& c, std::int64_t m);

struct CupSeriesValue {
  double value;
  double bound;
};

// Partial Fourier sum over |m| <= M and a certified bound on what was left out.
CupSeriesValue cup_series_eval(const CupFunction& c, double x, std::uint64_t M);

// Coefficients for |m| <= M, computed once and reused across points.
class CupSeries {
 public:
  CupSeries(const CupFunction& c, std::uint64_t M);
  CupSeriesValue eval(double x) const;
  double bound() const { return bound_; }

 private:
  std::vector<std::complex<double>> coeff_;  // index m, 0..M
  double bound_;
};

// Certified bound on 2 * sum_{m > M} |c(m)| from the decay majorant.
double cup_tail_bound(const CupFunction& c, std::uint64_t M);

struct SandwichWeights {
  CupFunction lower;  // plateau inside the window, support = (a, b)
  CupFunction upper;  // plateau = [a, b]
  std::map<std::uint32_t, Rational> w1;
  std::map<std::uint32_t, Rational> w0;
  std::map<std::uint32_t, Rational> w2;
};

// w1(p) <= w0(p) = 1_{(a,b)}({eta p^2}) <= w2(p). Membership is decided
// exactly; cup values are taken at the 64-bit certified value of {eta p^2}.
SandwichWeights sandwich_weights(const Window& w, const Rational& delta, unsigned r, const QuadraticIrrational& eta,
                                 std::span<const std::uint32_t> primes);

}  // namespace fivesq
