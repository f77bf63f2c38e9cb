#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "fivesq/error.hpp"
#include "fivesq/primes.hpp"
#include "oracle.hpp"

using namespace fivesq;

namespace {
auto table(std::uint64_t limit) { return std::make_shared<const PrimeTable>(sieve(limit)); }
const auto kSqrt2 = QuadraticIrrational::make(0, 2, 1);
}  // namespace

TEST_CASE("sieve counts") {
  const auto t30 = sieve(30);
  CHECK(t30.primes() == std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(sieve(100).count() == 25);
  CHECK(sieve(1'000'000).count() == 78498);
  CHECK(sieve(2).count() == 1);
  CHECK_THROWS_AS(sieve(1), InvalidArgument);
  CHECK_THROWS_AS(sieve(kMaxSieveLimit + 1), InvalidArgument);
}

TEST_CASE("sieve agrees with trial division") {
  const auto t = sieve(5000);
  for (std::uint64_t n = 0; n <= 5000; ++n) CHECK(t.is_prime(n) == oracle::is_prime(n));
  CHECK_FALSE(t.is_prime(5001));
  CHECK(t.primes_up_to(30).size() == 10);
}

TEST_CASE("segmented kernel matches plain sieve") {
  for (std::uint64_t limit : {2ULL, 63ULL, 64ULL, 65ULL, 1000ULL, 262'143ULL, 262'144ULL, 1'000'003ULL}) {
    const auto a = kernels::serial::eratosthenes(limit);
    const auto b = kernels::omp::segmented(limit, 1 << 12);
    CHECK(kernels::extract_primes(a, limit) == kernels::extract_primes(b, limit));
  }
}

TEST_CASE("special prime examples") {
  const auto t = table(10);
  const auto narrow = Window::make(Rational(7, 10), Rational(3, 4));
  CHECK(special_primes(t, kSqrt2, narrow, Exponent::Square).members == std::vector<std::uint32_t>{3});
  const auto wide = Window::make(Rational(1, 1000), Rational(999, 1000));
  CHECK(special_primes(t, kSqrt2, wide, Exponent::Square).members == std::vector<std::uint32_t>{2, 3, 5, 7});
  CHECK(special_primes(t, kSqrt2, narrow, Exponent::Linear).members.empty());
}

TEST_CASE("special primes: nested windows and serial equivalence") {
  const auto t = table(200'000);
  const auto inner = Window::make(Rational(1, 5), Rational(2, 5));
  const auto outer = Window::make(Rational(1, 10), Rational(3, 5));
  for (auto e : {Exponent::Linear, Exponent::Square}) {
    const auto a = special_primes(t, kSqrt2, inner, e).members;
    const auto b = special_primes(t, kSqrt2, outer, e).members;
    CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
    CHECK(special_primes_serial(t->primes(), kSqrt2, outer, e) == b);
  }
}

TEST_CASE("density") {
  const auto t = table(1'000'000);
  const auto w = Window::make(Rational(1, 10), Rational(3, 5));
  CHECK(std::abs(density_estimate(special_primes(t, kSqrt2, w, Exponent::Square)) - 0.5) <= 0.01);
  CHECK(std::abs(density_estimate(special_primes(t, kSqrt2, w, Exponent::Linear)) - 0.5) <= 0.01);
  const auto wide = Window::make(Rational(1, 1000), Rational(999, 1000));
  CHECK(density_estimate(special_primes(table(1000), kSqrt2, wide, Exponent::Square)) >= 0.95);
}

TEST_CASE("dump_members") {
  const auto path = std::filesystem::temp_directory_path() / "fivesq_members.txt";
  const auto s = special_primes(table(10), kSqrt2, Window::make(Rational(1, 1000), Rational(999, 1000)),
                                Exponent::Square);
  dump_members(s, path);
  std::ifstream in(path);
  std::string all((std::istreambuf_iterator<char>(in)), {});
  CHECK(all == "2\n3\n5\n7\n");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(dump_members(s, "/nonexistent-dir/x.txt"), IoError);
}
