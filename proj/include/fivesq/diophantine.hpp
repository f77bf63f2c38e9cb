#pragma once

// Exact arithmetic for quadratic irrationals (P + s*sqrt(D)) / Q: continued
// fractions, certified fractional parts, exact window membership, and
// Dirichlet approximation of certified reals.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fivesq/numeric.hpp"
#include "fivesq/window.hpp"

namespace fivesq {

class QuadraticIrrational {
 public:
  // Value (P + sqrt(D)) / Q. A negative Q is folded into the sign of the
  // radical so that q_den() is always positive.
  static QuadraticIrrational make(const Integer& P, const Integer& D, const Integer& Q);
  // "P,D,Q"
  static QuadraticIrrational parse(std::string_view text);

  const Integer& p_num() const { return p_; }
  const Integer& d_rad() const { return d_; }
  const Integer& q_den() const { return q_; }
  // +1 or -1: value is (p_num + rad_sign * sqrt(d_rad)) / q_den.
  int rad_sign() const { return sign_; }

  QuadraticIrrational negated() const;
  double to_double() const;
  // Inverse of parse(); round-trips through make().
  std::string to_string() const;

  friend bool operator==(const QuadraticIrrational&, const QuadraticIrrational&) = default;

 private:
  QuadraticIrrational(Integer p, Integer d, Integer q, int sign)
      : p_(std::move(p)), d_(std::move(d)), q_(std::move(q)), sign_(sign) {}
  Integer p_;
  Integer d_;
  Integer q_;
  int sign_ = 1;
};

inline QuadraticIrrational make_quadratic_irrational(const Integer& P, const Integer& D,
                                                     const Integer& Q) {
  return QuadraticIrrational::make(P, D, Q);
}

// Real number known to lie within 2^-err_bits of mantissa / 2^frac_bits.
class FixedPointReal {
 public:
  FixedPointReal(Integer mantissa, int frac_bits, int err_bits);

  // Round-to-nearest; the rounding error is at most 2^-(frac_bits+1).
  static FixedPointReal from_rational(const Rational& q, int frac_bits);
  // Doubles are dyadic; the result is exact whenever frac_bits covers x's ulp.
  static FixedPointReal from_double(double x, int frac_bits);

  const Integer& mantissa() const { return mantissa_; }
  int frac_bits() const { return frac_bits_; }
  int err_bits() const { return err_bits_; }

  Rational midpoint() const;
  Rational lower() const;
  Rational upper() const;
  double to_double() const;

  FixedPointReal operator+(const FixedPointReal& rhs) const;
  FixedPointReal operator-() const;
  FixedPointReal operator-(const FixedPointReal& rhs) const { return *this + (-rhs); }
  FixedPointReal add_integer(const Integer& k) const;
  // Adds an exact rational, rounded at this value's precision.
  FixedPointReal add_rational(const Rational& q) const;
  // Midpoint reduced into [0, 1); the certified radius is unchanged.
  FixedPointReal frac() const;
  // Reduces the midpoint into [lo, lo + 1).
  FixedPointReal reduce_into(const Rational& lo) const;

 private:
  Integer mantissa_;
  int frac_bits_;
  int err_bits_;
};

struct RationalApprox {
  Integer d;
  Integer q;
  // Certified: |t - d/q| <= err_bound for every t the input could represent.
  double err_bound = 0.0;
};

struct ContinuedFraction {
  Integer a0;
  std::vector<Integer> preperiod;
  std::vector<Integer> period;

  // Partial quotient a_i, i >= 0, following the periodic expansion.
  Integer term(std::size_t i) const;
};

struct Convergent {
  Integer num;
  Integer den;
  friend bool operator==(const Convergent&, const Convergent&) = default;
};

ContinuedFraction continued_fraction(const QuadraticIrrational& eta);

std::vector<Convergent> convergents(const QuadraticIrrational& eta, std::size_t count);

// floor(eta * m), exact.
Integer floor_multiple(const QuadraticIrrational& eta, const Integer& m);

// eta * m with error < 2^-frac_bits (m may be negative or zero).
FixedPointReal multiple(const QuadraticIrrational& eta, const Integer& m, int frac_bits);

// {eta * n} with error < 2^-frac_bits, computed with integer square roots only.
FixedPointReal frac_part(const QuadraticIrrational& eta, const Integer& n, int frac_bits);
inline FixedPointReal frac_part(const QuadraticIrrational& eta, std::uint64_t n, int frac_bits) {
  return frac_part(eta, to_integer(n), frac_bits);
}

// Exact decision of a < {eta * n} < b.
bool window_test(const QuadraticIrrational& eta, const Integer& n, const Window& w);
inline bool window_test(const QuadraticIrrational& eta, std::uint64_t n, const Window& w) {
  return window_test(eta, to_integer(n), w);
}

// Exact sign of {eta * n} - x for rational x in (0, 1); never zero.
int compare_frac(const QuadraticIrrational& eta, const Integer& n, const Rational& x);

// d/q with 1 <= q <= tau, gcd(d, q) = 1 and |t - d/q| <= 1/(q*tau), taken from
// the continued fraction of t. Throws InsufficientPrecision when the certified
// radius of t does not allow the inequality to be guaranteed.
RationalApprox dirichlet_approx(const FixedPointReal& t, std::uint64_t tau);

}  // namespace fivesq
