#include <doctest.h>

#include <cmath>
#include <random>

#include "fivesq/diophantine.hpp"
#include "fivesq/error.hpp"
#include "oracle.hpp"

using namespace fivesq;

namespace {

QuadraticIrrational sqrt2() { return QuadraticIrrational::make(0, 2, 1); }
QuadraticIrrational sqrt3() { return QuadraticIrrational::make(0, 3, 1); }
QuadraticIrrational golden() { return QuadraticIrrational::make(1, 5, 2); }

std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("construction") {
  CHECK(std::abs(sqrt2().to_double() - std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(golden().to_double() - 1.6180339887498949) < 1e-15);
  CHECK_THROWS_AS(QuadraticIrrational::make(0, 4, 1), PerfectSquare);
  CHECK_THROWS_AS(QuadraticIrrational::make(0, 2, 0), InvalidArgument);
  CHECK_THROWS_AS(QuadraticIrrational::make(0, -3, 1), InvalidArgument);

  const auto neg = QuadraticIrrational::make(1, 5, -2);
  CHECK(neg.q_den() == 2);
  CHECK(neg.rad_sign() == -1);
  CHECK(std::abs(neg.to_double() - (1 + std::sqrt(5.0)) / -2) < 1e-15);
  CHECK(QuadraticIrrational::parse(golden().to_string()) == golden());
  CHECK(QuadraticIrrational::parse("0,2,1") == sqrt2());
  CHECK_THROWS_AS(QuadraticIrrational::parse("0,2"), InvalidArgument);
}

TEST_CASE("continued fractions") {
  auto cf = continued_fraction(sqrt2());
  CHECK(cf.a0 == 1);
  CHECK(cf.period == ints({2}));

  cf = continued_fraction(golden());
  CHECK(cf.a0 == 1);
  CHECK(cf.period == ints({1}));

  cf = continued_fraction(sqrt3());
  CHECK(cf.a0 == 1);
  CHECK(cf.period == ints({1, 2}));

  // sqrt(7) = [2; 1, 1, 1, 4]
  cf = continued_fraction(QuadraticIrrational::make(0, 7, 1));
  CHECK(cf.a0 == 2);
  CHECK(cf.period == ints({1, 1, 1, 4}));
  CHECK(cf.term(5) == 1);
  CHECK(cf.term(8) == 4);

  // (1 + sqrt 2)/3 = 0.8047...: terms follow from floor arithmetic.
  const auto eta = QuadraticIrrational::make(1, 2, 3);
  cf = continued_fraction(eta);
  CHECK(cf.a0 == 0);
  long double x = (1.0L + std::sqrt(2.0L)) / 3.0L;
  for (std::size_t i = 0; i < 8; ++i) {
    const long a = static_cast<long>(std::floor(x));
    CHECK(cf.term(i) == a);
    x = 1.0L / (x - a);
  }
}

TEST_CASE("convergents") {
  auto cs = convergents(sqrt2(), 5);
  std::vector<std::pair<long, long>> want = {{1, 1}, {3, 2}, {7, 5}, {17, 12}, {41, 29}};
  REQUIRE(cs.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    CHECK(cs[i].num == want[i].first);
    CHECK(cs[i].den == want[i].second);
  }
  cs = convergents(golden(), 4);
  want = {{1, 1}, {2, 1}, {3, 2}, {5, 3}};
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(cs[i] == Convergent{want[i].first, want[i].second});
  cs = convergents(sqrt3(), 3);
  want = {{1, 1}, {2, 1}, {5, 3}};
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(cs[i] == Convergent{want[i].first, want[i].second});

  // Successive convergents satisfy p_k q_{k-1} - p_{k-1} q_k = +-1.
  cs = convergents(QuadraticIrrational::make(3, 13, 7), 30);
  for (std::size_t k = 1; k < cs.size(); ++k) {
    const Integer det = cs[k].num * cs[k - 1].den - cs[k - 1].num * cs[k].den;
    CHECK(abs(det) == 1);
  }
}

TEST_CASE("floor_multiple") {
  CHECK(floor_multiple(sqrt2(), 9) == 12);
  CHECK(floor_multiple(sqrt2(), -9) == -13);
  CHECK(floor_multiple(sqrt2(), 0) == 0);
  CHECK(floor_multiple(golden(), 1) == 1);
  const auto neg = QuadraticIrrational::make(1, 5, -2);  // -1.618...
  CHECK(floor_multiple(neg, 1) == -2);
  CHECK(floor_multiple(neg, 3) == -5);  // -4.854
}

TEST_CASE("frac_part against the 128-bit oracle") {
  auto f = frac_part(sqrt2(), 9, 64);
  CHECK(std::abs(f.to_double() - 0.7279220613578554) < 1e-15);
  f = frac_part(golden(), 1, 64);
  CHECK(std::abs(f.to_double() - 0.6180339887498949) < 1e-15);
  f = frac_part(sqrt2(), 2, 64);
  CHECK(std::abs(f.to_double() - 0.8284271247461903) < 1e-15);

  std::mt19937_64 rng(7);
  for (const auto& eta : {sqrt2(), sqrt3(), golden()}) {
    for (int i = 0; i < 2000; ++i) {
      const std::uint64_t n = rng() % 1'000'000'000'000ULL;
      const auto ours = frac_part(eta, n, 100);
      const auto ref = oracle::frac128(eta.p_num().get_si(), eta.d_rad().get_si(), eta.q_den().get_si(),
                                       oracle::big(n));
      // Both are within ~2^-100 of the truth.
      const Rational ref_mid(Integer(ref.mantissa.str()) + 1, Integer(1) << 128);
      Rational diff = ours.midpoint() - ref_mid;
      if (diff > Rational(1, 2)) diff -= 1;
      if (diff < Rational(-1, 2)) diff += 1;
      CHECK(abs(diff) < Rational(1, Integer(1) << 98));
    }
  }
}

TEST_CASE("frac parts of n and -n sum to one") {
  for (const auto& eta : {sqrt2(), sqrt3(), golden()}) {
    for (std::uint64_t n = 1; n < 500; n += 7) {
      const auto a = frac_part(eta, Integer(static_cast<unsigned long>(n)), 80);
      const auto b = frac_part(eta, -Integer(static_cast<unsigned long>(n)), 80);
      const Rational s = a.midpoint() + b.midpoint();
      CHECK(abs(s - 1) < Rational(1, Integer(1) << 78));
    }
  }
}

TEST_CASE("window_test examples") {
  CHECK(window_test(sqrt2(), 9, Window::make(Rational(7, 10), Rational(3, 4))));
  CHECK_FALSE(window_test(sqrt2(), 4, Window::make(Rational(7, 10), Rational(3, 4))));
  CHECK_FALSE(window_test(sqrt2(), 9, Window::make(Rational(73, 100), Rational(3, 4))));
  CHECK_THROWS_AS(Window::make(Rational(1, 2), Rational(1, 2)), InvalidArgument);
  CHECK_THROWS_AS(Window::make(Rational(0), Rational(1, 2)), InvalidArgument);
}

TEST_CASE("window_test matches the oracle near boundaries") {
  std::mt19937_64 rng(11);
  const oracle::big two128 = oracle::big(1) << 128;
  for (const auto& eta : {sqrt2(), sqrt3(), golden(), QuadraticIrrational::make(1, 5, -2)}) {
    for (int i = 0; i < 300; ++i) {
      const std::uint64_t n = 1 + rng() % 100'000'000'000ULL;
      const Integer nn(static_cast<unsigned long>(n));
      if (eta.rad_sign() < 0) continue;  // oracle covers positive radicals only
      const auto ref = oracle::frac128(eta.p_num().get_si(), eta.d_rad().get_si(), eta.q_den().get_si(),
                                       oracle::big(n));
      // a just below and just above the true value, 2^-100 away.
      for (int side : {-1, 1}) {
        const oracle::big num = ref.mantissa + side * (oracle::big(1) << 28) + 1;
        if (num <= 0 || num >= two128) continue;
        const Rational a(Integer(num.str()), Integer(two128.str()));
        if (a >= Rational(999, 1000)) continue;
        const Window w = Window::make(a, Rational(9995, 10000));
        const auto want = oracle::below(ref, num, two128);
        REQUIRE(want.has_value());
        CHECK(window_test(eta, nn, w) == (*want && ref.mantissa * 10000 < two128 * 9995));
        CHECK(compare_frac(eta, nn, a) == (*want ? 1 : -1));
      }
    }
  }
}

TEST_CASE("fixed point helpers") {
  const auto x = FixedPointReal::from_rational(Rational(5, 4), 10);
  CHECK(x.midpoint() == Rational(5, 4));
  CHECK(x.frac().midpoint() == Rational(1, 4));
  CHECK(x.reduce_into(Rational(-1, 2)).midpoint() == Rational(1, 4));
  CHECK((x - x).midpoint() == 0);
  CHECK(x.add_integer(-3).midpoint() == Rational(-7, 4));
  CHECK(x.lower() <= x.midpoint());
  CHECK(x.midpoint() <= x.upper());
  CHECK(FixedPointReal::from_double(0.375, 53).midpoint() == Rational(3, 8));
}

TEST_CASE("dirichlet_approx") {
  auto r = dirichlet_approx(FixedPointReal::from_rational(Rational(1, 2), 64), 10);
  CHECK(r.d == 1);
  CHECK(r.q == 2);
  CHECK(r.err_bound < 1e-18);

  const double pi_frac = M_PI - 3;
  r = dirichlet_approx(FixedPointReal::from_double(pi_frac, 64), 100);
  CHECK(r.d == 1);
  CHECK(r.q == 7);
  CHECK(std::abs(pi_frac - 1.0 / 7) <= 1.0 / 700);

  const auto s = frac_part(sqrt2(), 1, 96);
  r = dirichlet_approx(s, 30);
  CHECK(r.d == 12);
  CHECK(r.q == 29);
  CHECK(std::abs(std::sqrt(2.0) - 1 - 12.0 / 29) <= 1.0 / 870);

  // Property: q <= tau, coprime, |t - d/q| <= 1/(q tau).
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const double t = static_cast<double>(rng() >> 11) * 0x1p-53;
    const std::uint64_t tau = 1 + rng() % 1'000'000;
    const auto x = FixedPointReal::from_double(t, 128);
    const auto a = dirichlet_approx(x, tau);
    CHECK(a.q >= 1);
    CHECK(a.q <= static_cast<unsigned long>(tau));
    CHECK(gcd(a.d, a.q) == 1);
    const Rational dev = abs(x.midpoint() - Rational(a.d, a.q));
    CHECK(dev <= Rational(Integer(1), a.q * Integer(static_cast<unsigned long>(tau))));
  }

  // A radius wider than 1/tau^2 cannot certify the bound.
  CHECK_THROWS_AS(dirichlet_approx(FixedPointReal(Integer(1), 4, 4), 1'000'000), InsufficientPrecision);
}
