#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fivesq/error.hpp"
#include "fivesq/expsum.hpp"
#include "fivesq/primes.hpp"

using namespace fivesq;

namespace {
const auto kSqrt2 = QuadraticIrrational::make(0, 2, 1);
}

TEST_CASE("S basics") {
  for (std::uint64_t n : {100ULL, 1000ULL, 1'000'000ULL}) {
    const auto s0 = eval_S(0.0, n);
    const auto pi = sieve(static_cast<std::uint64_t>(std::sqrt(double(n)))).count();
    CHECK(s0.real() == double(pi));
    CHECK(s0.imag() == 0.0);
  }
  const auto h = eval_S(0.5, 100);
  CHECK(std::abs(h - std::complex<double>(-2, 0)) < 1e-12);

  std::mt19937_64 rng(1);
  const auto ps = sieve(1000).primes();
  for (int i = 0; i < 200; ++i) {
    // Dyadic with 30 bits, so 1 - x and x + 1 are exact.
    const double x = std::ldexp(static_cast<double>(rng() >> 34), -30);
    const auto a = eval_S(x, 1'000'000, ps);
    CHECK(std::abs(a - std::conj(eval_S(1.0 - x, 1'000'000, ps))) < 1e-9);
    CHECK(std::abs(a - eval_S(x + 1.0, 1'000'000, ps)) < 1e-9);
    CHECK(std::abs(a) <= 168 + 1e-9);
    // Direct sum in long double.
    std::complex<long double> d = 0;
    for (auto p : ps) {
      const long double ph = std::fmod(static_cast<long double>(x) * p * p, 1.0L);
      d += std::polar(1.0L, 2 * static_cast<long double>(M_PI) * ph);
    }
    CHECK(std::abs(std::complex<double>(d) - a) < 1e-9);
  }
  CHECK(reduced_phase(0.5, 3) == 0.5);
  CHECK(reduced_phase(0.25, 7) == 0.75);
}

TEST_CASE("weighted S") {
  const auto ps = sieve(100).primes();
  PrimeWeights ones, zeros, ind;
  for (auto p : ps) {
    ones[p] = 1;
    zeros[p] = 0;
    if (p % 3 == 1) ind[p] = 1;
  }
  const double x = 0.3141;
  CHECK(std::abs(weighted_S(x, 10'000, ones) - eval_S(x, 10'000)) < 1e-12);
  CHECK(std::abs(weighted_S(x, 10'000, zeros)) == 0.0);
  CHECK(weighted_S(0.0, 10'000, ind).real() == double(ind.size()));
  CHECK(weighted_S(0.0, 100, ind).real() == 1.0);  // only 7 <= 10
}

TEST_CASE("arc classification") {
  const auto p = arc_params(1'000'000);
  CHECK(p.tau == static_cast<std::uint64_t>(std::floor(std::pow(1e6, 0.999))));
  CHECK(p.q_threshold == 1);

  auto lab = arc_classify(FixedPointReal::from_rational(Rational(0), 64), 1'000'000);
  CHECK(lab.kind == ArcKind::Major);
  CHECK(lab.approx.d == 0);
  CHECK(lab.approx.q == 1);

  // threshold >= 2 needs N^0.25 >= 2 at eps = 0.25.
  lab = arc_classify(FixedPointReal::from_rational(Rational(1, 2), 64), 10'000, 0.25);
  CHECK(lab.kind == ArcKind::Major);
  CHECK(lab.approx.q == 2);

  lab = arc_classify(frac_part(kSqrt2, 17, 96), 1'000'000);
  CHECK(lab.kind == ArcKind::Minor);
  CHECK(lab.approx.q > 1);
  CHECK(to_string(ArcKind::Minor) == "minor");
}

TEST_CASE("shifted approximation") {
  const auto zero = FixedPointReal::from_rational(Rational(0), 96);
  const auto r = shifted_approx(zero, 1, kSqrt2, 1000);
  // Best convergent of sqrt 2 with denominator <= 1000.
  CHECK(r.d == 1393);
  CHECK(r.q == 985);
  CHECK(std::abs(std::sqrt(2.0) - 1393.0 / 985) <= 1.0 / (985.0 * 985.0));

  const auto t = FixedPointReal::from_rational(Rational(1, 3), 96);
  const auto s = shifted_approx(t, 1, kSqrt2, 1000);
  const double v = 1.0 / 3 + std::sqrt(2.0);
  const double y = s.q.get_d();
  CHECK(std::abs(v - s.d.get_d() / y) <= 1 / (y * y));

  const auto t2 = FixedPointReal::from_double(0.123456789, 96);
  const auto a = shifted_approx(t2, 0, kSqrt2, 5000);
  const auto b = dirichlet_approx(t2, 5000);
  CHECK(a.d == b.d);
  CHECK(a.q == b.q);

  // At N = 1e6 the ln N factor puts lo above hi: the corridor is empty.
  const auto c = denominator_corridor(1'000'000, 999'986);
  CHECK(c.lo == doctest::Approx(std::sqrt(999'986.0) * std::pow(1e6, -0.01015) * std::log(1e6)));
  CHECK(c.hi == doctest::Approx(std::sqrt(999'986.0) * std::pow(1e6, 0.001)));
  CHECK_FALSE(c.contains(5000.0));
}

TEST_CASE("minor arc scan") {
  const auto rows = minor_arc_scan(1'000'000, 300, 42);
  CHECK(rows.size() == 300);
  for (const auto& r : rows) {
    CHECK(r.abs_s <= 168 + 1e-9);
    CHECK(r.t >= 0.0);
    CHECK(r.t < 1.0);
    if (r.t == 0.0) CHECK(r.kind == ArcKind::Major);
    CHECK(r.normalized == doctest::Approx(r.abs_s / 168));
  }
  const auto again = minor_arc_scan(1'000'000, 300, 42, kDefaultArcEpsilon, Exec::Serial);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].t == again[i].t);
    CHECK(rows[i].abs_s == again[i].abs_s);
  }
}
