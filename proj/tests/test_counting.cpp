#include <doctest.h>

#include <filesystem>

#include "fivesq/counting.hpp"
#include "fivesq/error.hpp"
#include "fivesq/primes.hpp"

using namespace fivesq;

namespace {

std::vector<std::uint32_t> primes_to(std::uint64_t n) { return sieve(n).primes(); }

// Five nested loops; independent of count_naive's pair counting.
std::vector<std::uint64_t> brute_table(std::uint64_t nmax, const std::vector<std::uint32_t>& ps) {
  std::vector<std::uint64_t> sq;
  for (auto p : ps)
    if (std::uint64_t(p) * p <= nmax) sq.push_back(std::uint64_t(p) * p);
  std::vector<std::uint64_t> out(nmax + 1, 0);
  for (auto a : sq)
    for (auto b : sq)
      for (auto c : sq)
        for (auto d : sq)
          for (auto e : sq)
            if (a + b + c + d + e <= nmax) ++out[a + b + c + d + e];
  return out;
}

}  // namespace

TEST_CASE("count_naive examples") {
  const auto ps = primes_to(100);
  CHECK(count_naive(20, ps) == 1);
  CHECK(count_naive(19, ps) == 0);
  CHECK(count_naive(61, ps) == 5);
  CHECK(count_naive(45, ps) == 1);
  CHECK_THROWS_AS(count_naive(kMaxNaiveN + 1, ps), InvalidArgument);
}

TEST_CASE("count_naive matches brute force") {
  const auto ps = primes_to(40);
  const auto want = brute_table(1200, ps);
  for (std::uint64_t n = 0; n <= 1200; ++n) CHECK(count_naive(n, ps) == want[n]);
  const std::vector<std::uint32_t> sub = {3, 7, 11, 23};
  const auto want_sub = brute_table(1200, sub);
  for (std::uint64_t n = 0; n <= 1200; ++n) CHECK(count_naive(n, sub) == want_sub[n]);
}

TEST_CASE("count_range examples") {
  const auto ps = primes_to(100);
  for (auto exec : {Exec::Serial, Exec::Parallel}) {
    const auto t = count_range(100, ps, exec);
    CHECK(t.counts[20] == 1);
    CHECK(t.counts[45] == 1);
    CHECK(t.counts[61] == 5);
    for (std::uint64_t n = 0; n < 20; ++n) CHECK(t.counts[n] == 0);
    for (std::uint64_t n = 0; n <= 100; ++n) CHECK(t.counts[n] == count_naive(n, ps));
  }
  const auto empty = count_range(10'000, std::vector<std::uint32_t>{});
  CHECK(std::all_of(empty.counts.begin(), empty.counts.end(), [](auto c) { return c == 0; }));
  const auto two = count_range(10'000, std::vector<std::uint32_t>{2});
  for (std::uint64_t n = 0; n <= 10'000; ++n) CHECK(two.counts[n] == (n == 20 ? 1u : 0u));
  CHECK(two.at(20'000) == 0);
}

TEST_CASE("count_range serial and parallel agree at scale") {
  const auto ps = primes_to(1000);
  const auto a = count_range(1'000'000, ps, Exec::Serial);
  const auto b = count_range(1'000'000, ps, Exec::Parallel);
  CHECK(a.counts == b.counts);
  for (std::uint64_t n : {999'989ULL, 1'000'000ULL, 500'069ULL}) CHECK(a.counts[n] == count_naive(n, ps));
}

TEST_CASE("weighted counts") {
  const auto ps = primes_to(100);
  PrimeWeights ones, ind;
  for (auto p : ps) {
    ones[p] = 1.0;
    ind[p] = (p % 4 == 3) ? 1.0 : 0.0;
  }
  const auto exact = count_range(3000, ps);
  const auto w = weighted_count_range(3000, ones, 1e-6);
  for (std::uint64_t n = 0; n <= 3000; ++n) CHECK(std::abs(w.values[n] - double(exact.counts[n])) <= w.err_bound);
  CHECK(w.err_bound < 1e-6);

  std::vector<std::uint32_t> sub;
  for (auto p : ps)
    if (p % 4 == 3) sub.push_back(p);
  const auto js = count_range(3000, sub);
  const auto wi = weighted_count_range(3000, ind, 1e-6, Exec::Serial);
  for (std::uint64_t n = 0; n <= 3000; ++n) CHECK(std::abs(wi.values[n] - double(js.counts[n])) <= wi.err_bound);

  CHECK_THROWS_AS(weighted_count_range(3000, ones, 1e-30), AuditFailure);
  PrimeWeights bad{{2, 1.5}};
  CHECK_THROWS_AS(weighted_count_range(100, bad), InvalidArgument);
}

TEST_CASE("exact weighted mode") {
  const auto ps = primes_to(100);
  std::map<std::uint32_t, Rational> half, ones;
  for (auto p : ps) {
    half[p] = Rational(1, 3);
    ones[p] = 1;
  }
  const auto lo = DyadicWeights::round_down(half, 10);
  const auto hi = DyadicWeights::round_up(half, 10);
  CHECK(lo.numerators.at(2) == 341);
  CHECK(hi.numerators.at(2) == 342);

  const auto t1 = weighted_count_range_exact(5000, DyadicWeights::round_down(ones, 20));
  const auto exact = count_range(5000, ps);
  for (std::uint64_t n = 0; n <= 5000; ++n) CHECK(t1.value(n) == Rational(exact.counts[n]));

  const auto a = weighted_count_range_exact(5000, lo, Exec::Serial);
  const auto b = weighted_count_range_exact(5000, lo, Exec::Parallel);
  CHECK(a.scaled == b.scaled);
  // (341/1024)^5 times the plain count.
  for (std::uint64_t n = 0; n <= 5000; ++n) {
    Rational f(341, 1024);
    CHECK(a.value(n) == Rational(exact.counts[n]) * f * f * f * f * f);
  }
  CHECK_THROWS_AS(weighted_count_range_exact(kMaxExactWeighted + 1, lo), CapacityExceeded);
}

TEST_CASE("binary dump round trip") {
  const auto t = count_range(2000, primes_to(50));
  const auto path = std::filesystem::temp_directory_path() / "fivesq_counts.bin";
  save_counts_binary(t, path);
  const auto back = load_counts_binary(path);
  CHECK(back.nmax == t.nmax);
  CHECK(back.counts == t.counts);
  CHECK(std::filesystem::file_size(path) == 4 + 4 + 8 + 8 * 2001);
  std::filesystem::resize_file(path, 100);
  CHECK_THROWS_AS(load_counts_binary(path), IoError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_counts_binary(path), IoError);
}
