#include "fivesq/diophantine.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "fivesq/error.hpp"

namespace fivesq {
namespace {

// (a + s*sqrt(r)) / q with q > 0; r is either zero or not a perfect square.
struct Surd {
  Integer a;
  Integer r;
  int s = 1;
  Integer q;
};

Surd surd_multiple(const QuadraticIrrational& eta, const Integer& m) {
  const int ms = sgn(m);
  return Surd{eta.p_num() * m, eta.d_rad() * m * m, eta.rad_sign() * (ms < 0 ? -1 : 1),
              eta.q_den()};
}

Integer surd_floor(const Surd& x) {
  if (sgn(x.r) == 0) return floor_div(x.a, x.q);
  const Integer b = isqrt(x.r);
  // b < sqrt(r) < b + 1 strictly, and the floor cannot jump inside that gap.
  if (x.s > 0) return floor_div(x.a + b, x.q);
  return floor_div(x.a - b - 1, x.q);
}

// sign(l + c*sqrt(r)) for r not a perfect square (or r == 0).
int sign_of(const Integer& l, const Integer& c, const Integer& r) {
  const int sl = sgn(l);
  const int sc = sgn(r) == 0 ? 0 : sgn(c);
  if (sc == 0) return sl;
  if (sl == 0 || sl == sc) return sc;
  const Integer l2 = l * l;
  const Integer c2r = c * c * r;
  // l and c*sqrt(r) have opposite signs; the larger magnitude wins.
  return l2 > c2r ? sl : sc;
}

// sign(x - y) for rational y.
int surd_compare(const Surd& x, const Rational& y) {
  const Integer& yn = y.get_num();
  const Integer& yd = y.get_den();
  const Integer l = yd * x.a - x.q * yn;
  const Integer c = yd * x.s;
  return sign_of(l, c, x.r);
}

FixedPointReal surd_fixed(const Surd& x, int frac_bits) {
  if (frac_bits < 1) throw InvalidArgument("frac_bits must be positive");
  const int k = frac_bits + 3;
  const Integer scaled_a = x.a << k;
  Integer low = scaled_a;
  if (sgn(x.r) != 0) {
    const Integer root = isqrt(x.r << (2 * k));
    low = x.s > 0 ? Integer(scaled_a + root) : Integer(scaled_a - root - 1);
  }
  const Integer m = floor_div(low, x.q);
  // true value * 2^k lies in [m, m + 2)
  return FixedPointReal(m + 1, k, k);
}

bool is_perfect_square(const Integer& v) { return mpz_perfect_square_p(v.get_mpz_t()) != 0; }

}  // namespace

// ---------------------------------------------------------------------------
// QuadraticIrrational

QuadraticIrrational QuadraticIrrational::make(const Integer& P, const Integer& D,
                                              const Integer& Q) {
  if (sgn(D) <= 0) throw InvalidArgument("radicand D must be positive");
  if (sgn(Q) == 0) throw InvalidArgument("denominator Q must be nonzero");
  if (is_perfect_square(D)) {
    throw PerfectSquare("radicand " + D.get_str() + " is a perfect square");
  }
  if (sgn(Q) > 0) return QuadraticIrrational(P, D, Q, 1);
  return QuadraticIrrational(-P, D, -Q, -1);
}

QuadraticIrrational QuadraticIrrational::parse(std::string_view text) {
  std::vector<Integer> parts;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    std::string piece(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
    while (!piece.empty() && piece.front() == ' ') piece.erase(piece.begin());
    while (!piece.empty() && piece.back() == ' ') piece.pop_back();
    Integer v;
    if (piece.empty() || v.set_str(piece, 10) != 0) {
      throw InvalidArgument("eta must look like P,D,Q; got '" + std::string(text) + "'");
    }
    parts.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 3) throw InvalidArgument("eta must have exactly three fields P,D,Q");
  return make(parts[0], parts[1], parts[2]);
}

QuadraticIrrational QuadraticIrrational::negated() const {
  return QuadraticIrrational(-p_, d_, q_, -sign_);
}

double QuadraticIrrational::to_double() const {
  return multiple(*this, Integer(1), 64).to_double();
}

std::string QuadraticIrrational::to_string() const {
  if (sign_ > 0) return p_.get_str() + "," + d_.get_str() + "," + q_.get_str();
  return Integer(-p_).get_str() + "," + d_.get_str() + "," + Integer(-q_).get_str();
}

// ---------------------------------------------------------------------------
// FixedPointReal

FixedPointReal::FixedPointReal(Integer mantissa, int frac_bits, int err_bits)
    : mantissa_(std::move(mantissa)), frac_bits_(frac_bits), err_bits_(err_bits) {
  if (frac_bits_ < 0) throw InvalidArgument("frac_bits must be nonnegative");
  if (err_bits_ > frac_bits_) throw InvalidArgument("err_bits may not exceed frac_bits");
}

FixedPointReal FixedPointReal::from_rational(const Rational& q, int frac_bits) {
  const Rational scaled = q * Rational(Integer(1) << frac_bits) + Rational(1, 2);
  return FixedPointReal(floor(scaled), frac_bits, frac_bits);
}

FixedPointReal FixedPointReal::from_double(double x, int frac_bits) {
  return from_rational(Rational(x), frac_bits);
}

Rational FixedPointReal::midpoint() const {
  Rational q(mantissa_, Integer(1) << frac_bits_);
  q.canonicalize();
  return q;
}

Rational FixedPointReal::lower() const {
  Rational r(1, Integer(1) << err_bits_);
  r.canonicalize();
  return midpoint() - r;
}

Rational FixedPointReal::upper() const {
  Rational r(1, Integer(1) << err_bits_);
  r.canonicalize();
  return midpoint() + r;
}

double FixedPointReal::to_double() const {
  if (frac_bits_ <= 60) return midpoint().get_d();
  const Integer whole = floor_div(mantissa_, Integer(1) << frac_bits_);
  const Integer rest = mantissa_ - (whole << frac_bits_);
  const Integer top = rest >> (frac_bits_ - 60);
  return whole.get_d() + std::ldexp(top.get_d(), -60);
}

FixedPointReal FixedPointReal::operator+(const FixedPointReal& rhs) const {
  const int f = std::max(frac_bits_, rhs.frac_bits_);
  const Integer lhs_m = mantissa_ << (f - frac_bits_);
  const Integer rhs_m = rhs.mantissa_ << (f - rhs.frac_bits_);
  return FixedPointReal(lhs_m + rhs_m, f, std::min(err_bits_, rhs.err_bits_) - 1);
}

FixedPointReal FixedPointReal::operator-() const {
  return FixedPointReal(-mantissa_, frac_bits_, err_bits_);
}

FixedPointReal FixedPointReal::add_integer(const Integer& k) const {
  return FixedPointReal(mantissa_ + (k << frac_bits_), frac_bits_, err_bits_);
}

FixedPointReal FixedPointReal::add_rational(const Rational& q) const {
  const FixedPointReal rounded = from_rational(q, frac_bits_);
  return FixedPointReal(mantissa_ + rounded.mantissa_, frac_bits_, err_bits_ - 1);
}

FixedPointReal FixedPointReal::frac() const {
  Integer r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), mantissa_.get_mpz_t(), frac_bits_);
  return FixedPointReal(r, frac_bits_, err_bits_);
}

FixedPointReal FixedPointReal::reduce_into(const Rational& lo) const {
  const Integer shift = floor(midpoint() - lo);
  return add_integer(-shift);
}

// ---------------------------------------------------------------------------
// Continued fractions

Integer ContinuedFraction::term(std::size_t i) const {
  if (i == 0) return a0;
  const std::size_t idx = i - 1;
  if (idx < preperiod.size()) return preperiod[idx];
  return period[(idx - preperiod.size()) % period.size()];
}

ContinuedFraction continued_fraction(const QuadraticIrrational& eta) {
  // Work with (p + sqrt(d)) / q, q of either sign, q | d - p^2.
  Integer p = eta.p_num();
  Integer d = eta.d_rad();
  Integer q = eta.q_den();
  if (eta.rad_sign() < 0) {
    p = -p;
    q = -q;
  }
  {
    Integer rem = d - p * p;
    if (!mpz_divisible_p(rem.get_mpz_t(), q.get_mpz_t())) {
      const Integer aq = abs(q);
      p *= aq;
      d *= q * q;
      q *= aq;
    }
  }
  auto partial_quotient = [&](const Integer& pp, const Integer& qq) {
    Surd s{pp, d, 1, qq};
    if (sgn(qq) < 0) s = Surd{-pp, d, -1, -qq};
    return surd_floor(s);
  };
  auto advance = [&](const Integer& a) {
    p = a * q - p;
    q = (d - p * p) / q;
  };

  ContinuedFraction cf;
  cf.a0 = partial_quotient(p, q);
  advance(cf.a0);

  std::map<std::pair<Integer, Integer>, std::size_t> seen;
  std::vector<Integer> terms;
  for (;;) {
    auto key = std::make_pair(p, q);
    auto it = seen.find(key);
    if (it != seen.end()) {
      const std::size_t start = it->second;
      cf.preperiod.assign(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(start));
      cf.period.assign(terms.begin() + static_cast<std::ptrdiff_t>(start), terms.end());
      return cf;
    }
    seen.emplace(std::move(key), terms.size());
    const Integer a = partial_quotient(p, q);
    terms.push_back(a);
    advance(a);
  }
}

std::vector<Convergent> convergents(const QuadraticIrrational& eta, std::size_t count) {
  if (count == 0) throw InvalidArgument("convergent count must be positive");
  const ContinuedFraction cf = continued_fraction(eta);
  std::vector<Convergent> out;
  out.reserve(count);
  Integer h_prev = 1, h_prev2 = 0;
  Integer k_prev = 0, k_prev2 = 1;
  for (std::size_t i = 0; i < count; ++i) {
    const Integer a = cf.term(i);
    Integer h = a * h_prev + h_prev2;
    Integer k = a * k_prev + k_prev2;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    out.push_back({h, k});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Multiples and fractional parts

Integer floor_multiple(const QuadraticIrrational& eta, const Integer& m) {
  return surd_floor(surd_multiple(eta, m));
}

FixedPointReal multiple(const QuadraticIrrational& eta, const Integer& m, int frac_bits) {
  return surd_fixed(surd_multiple(eta, m), frac_bits);
}

FixedPointReal frac_part(const QuadraticIrrational& eta, const Integer& n, int frac_bits) {
  Surd x = surd_multiple(eta, n);
  x.a -= surd_floor(x) * x.q;
  return surd_fixed(x, frac_bits);
}

int compare_frac(const QuadraticIrrational& eta, const Integer& n, const Rational& x) {
  const Surd s = surd_multiple(eta, n);
  const Integer f = surd_floor(s);
  return surd_compare(s, x + Rational(f));
}

bool window_test(const QuadraticIrrational& eta, const Integer& n, const Window& w) {
  const Surd s = surd_multiple(eta, n);
  const Rational f(surd_floor(s));
  return surd_compare(s, w.a() + f) > 0 && surd_compare(s, w.b() + f) < 0;
}

// ---------------------------------------------------------------------------
// Dirichlet approximation

RationalApprox dirichlet_approx(const FixedPointReal& t, std::uint64_t tau) {
  if (tau == 0) throw InvalidArgument("tau must be positive");
  const Integer tau_z = to_integer(tau);
  const Rational mid = t.midpoint();

  // Convergents of the (rational) midpoint; keep the last with den <= tau.
  Integer num = mid.get_num();
  Integer den = mid.get_den();
  Integer h_prev = 1, h_prev2 = 0;
  Integer k_prev = 0, k_prev2 = 1;
  Integer best_h, best_k;
  while (sgn(den) != 0) {
    const Integer a = floor_div(num, den);
    const Integer h = a * h_prev + h_prev2;
    const Integer k = a * k_prev + k_prev2;
    if (k > tau_z) break;
    best_h = h;
    best_k = k;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const Integer r = num - a * den;
    num = den;
    den = r;
  }

  Rational approx(best_h, best_k);
  const Rational allowed(Integer(1), best_k * tau_z);
  const Rational lo_gap = abs(Rational(t.lower() - approx));
  const Rational hi_gap = abs(Rational(t.upper() - approx));
  const Rational worst = lo_gap > hi_gap ? lo_gap : hi_gap;
  if (worst > allowed) {
    throw InsufficientPrecision("Dirichlet approximation with tau=" + tau_z.get_str() +
                                " is ambiguous at " + std::to_string(t.err_bits()) +
                                " certified bits");
  }
  return RationalApprox{best_h, best_k, upper_double(worst)};
}

}  // namespace fivesq
