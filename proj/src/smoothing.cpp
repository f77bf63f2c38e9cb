#include "fivesq/smoothing.hpp"

#include <cmath>
#include <numbers>

#include "fivesq/error.hpp"

namespace fivesq {
namespace {

constexpr double kPi = std::numbers::pi;

// x mod 2 in [0, 2), as a double; keeps sin(pi x) accurate for large x.
double mod2(const Rational& x) {
  const Rational half = x / 2;
  return Rational(Rational(half - Rational(floor(half))) * 2).get_d();
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Rational rpow(const Rational& base, unsigned e) {
  Rational out(1);
  for (unsigned i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

CupFunction make_cup(const Rational& alpha, const Rational& beta, const Rational& delta, unsigned r) {
  if (r == 0) throw InvalidGeometry("cup order r must be positive");
  if (!(alpha < beta)) throw InvalidGeometry("cup needs alpha < beta");
  const Rational width = beta - alpha;
  if (!(sgn(delta) > 0 && delta < width)) {
    throw InvalidGeometry("cup needs 0 < delta < beta - alpha");
  }
  if (!(width + delta < 1)) throw InvalidGeometry("cup needs beta - alpha + delta < 1");
  return CupFunction{alpha, beta, delta, r};
}

Rational smoothing_kernel_cdf(const Rational& t, const Rational& delta, unsigned r) {
  const Rational half = delta / 2;
  if (t <= -half) return Rational(0);
  if (t >= half) return Rational(1);
  const Rational h = delta / r;
  const Rational u = t / h + Rational(r, 2);
  const unsigned top = static_cast<unsigned>(floor(u).get_ui());
  Rational sum(0);
  for (unsigned k = 0; k <= top && k <= r; ++k) {
    const Rational term = Rational(binomial(r, k)) * rpow(u - k, r);
    if (k & 1u) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  Rational out = sum / Rational(factorial(r));
  out.canonicalize();
  return out;
}

Rational cup_eval(const CupFunction& c, const Rational& x) {
  const Rational reduced = x - Rational(floor(x));
  const Integer j_lo = -floor(reduced - c.support_lo());
  const Integer j_hi = floor(c.support_hi() - reduced);
  Rational value(0);
  for (Integer j = j_lo; j <= j_hi; ++j) {
    const Rational y = reduced + Rational(j);
    value += smoothing_kernel_cdf(y - c.alpha, c.delta, c.r) - smoothing_kernel_cdf(y - c.beta, c.delta, c.r);
  }
  value.canonicalize();
  return value;
}

std::complex<double> cup_fourier_coeff(const CupFunction& c, std::int64_t m) {
  if (m == 0) return {Rational(c.beta - c.alpha).get_d(), 0.0};
  const Rational mq(to_integer(m));
  const double pm = kPi * static_cast<double>(m);
  const double phase = -kPi * mod2(mq * (c.alpha + c.beta));
  const double interval = std::sin(kPi * mod2(mq * (c.beta - c.alpha))) / pm;
  const Rational y = mq * c.delta / c.r;
  const double sinc = std::sin(kPi * mod2(y)) / (kPi * y.get_d());
  return std::polar(1.0, phase) * (interval * std::pow(sinc, static_cast<double>(c.r)));
}

double cup_coeff_majorant(const CupFunction& c, std::int64_t m) {
  const double width = Rational(c.beta - c.alpha).get_d();
  if (m == 0) return width;
  const double am = static_cast<double>(m < 0 ? -m : m);
  const double first = 1.0 / (kPi * am);
  const double decay = first * std::pow(c.r / (kPi * am * c.delta.get_d()), static_cast<double>(c.r));
  return std::min({width, first, decay});
}

double cup_tail_bound(const CupFunction& c, std::uint64_t M) {
  if (M == 0) throw InvalidArgument("cup series needs M >= 1");
  // 2 * sum_{m>M} (1/(pi m)) (r/(pi m delta))^r <= (2/pi) (r/(pi delta))^r M^-r / r
  const double r = c.r;
  const double log_bound = std::log(2.0 / kPi) + r * std::log(r / (kPi * c.delta.get_d())) -
                           r * std::log(static_cast<double>(M)) - std::log(r);
  return std::exp(log_bound) * (1.0 + 1e-12);
}

CupSeries::CupSeries(const CupFunction& c, std::uint64_t M) : coeff_(M + 1) {
  double lipschitz = 0.0;
  for (std::uint64_t m = 0; m <= M; ++m) {
    coeff_[m] = cup_fourier_coeff(c, static_cast<std::int64_t>(m));
    lipschitz += 4.0 * kPi * static_cast<double>(m) * std::abs(coeff_[m]);
  }
  // truncation + summation rounding + argument rounding of x
  bound_ = cup_tail_bound(c, M) + static_cast<double>(2 * M + 1) * std::ldexp(1.0, -50) +
           lipschitz * std::ldexp(1.0, -52);
}

CupSeriesValue CupSeries::eval(double x) const {
  x -= std::floor(x);
  double value = coeff_[0].real();
  for (std::size_t m = 1; m < coeff_.size(); ++m) {
    const double angle = 2.0 * kPi * static_cast<double>(m) * x;
    value += 2.0 * (coeff_[m] * std::polar(1.0, angle)).real();
  }
  return {value, bound_};
}

CupSeriesValue cup_series_eval(const CupFunction& c, double x, std::uint64_t M) {
  if (M == 0) throw InvalidArgument("cup series needs M >= 1");
  return CupSeries(c, M).eval(x);
}

SandwichWeights sandwich_weights(const Window& w, const Rational& delta, unsigned r, const QuadraticIrrational& eta,
                                 std::span<const std::uint32_t> primes) {
  const Rational half = delta / 2;
  SandwichWeights out{make_cup(w.a() + half, w.b() - half, delta, r),
                      make_cup(w.a() - half, w.b() + half, delta, r),
                      {},
                      {},
                      {}};
  for (const auto p : primes) {
    const Integer sq = Integer(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p);
    const bool inside = window_test(eta, sq, w);
    const Rational x = frac_part(eta, sq, 64).midpoint();
    out.w0[p] = Rational(inside ? 1 : 0);
    // The lower cup vanishes off (a, b) and the upper cup is 1 on [a, b],
    // so those branches are exact whatever the approximation of x.
    out.w1[p] = inside ? cup_eval(out.lower, x) : Rational(0);
    out.w2[p] = inside ? Rational(1) : cup_eval(out.upper, x);
  }
  return out;
}

}  // namespace fivesq
