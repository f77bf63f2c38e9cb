#include "fivesq/primes.hpp"

#include <algorithm>
#include <fstream>

#include "fivesq/error.hpp"

namespace fivesq {
namespace {

Integer power_of(std::uint32_t p, Exponent e) {
  Integer n(static_cast<unsigned long>(p));
  return e == Exponent::Square ? Integer(n * n) : n;
}

}  // namespace

std::vector<std::uint32_t> PrimeTable::primes_up_to(std::uint64_t bound) const {
  const auto end = std::upper_bound(primes_.begin(), primes_.end(), bound,
                                    [](std::uint64_t b, std::uint32_t p) { return b < p; });
  return {primes_.begin(), end};
}

PrimeTable sieve(std::uint64_t limit) {
  if (limit < 2 || limit > kMaxSieveLimit) {
    throw InvalidArgument("sieve limit must lie in [2, 1e9], got " + std::to_string(limit));
  }
  kernels::PrimeBits bits =
      limit > kSegmentedThreshold ? kernels::omp::segmented(limit) : kernels::serial::eratosthenes(limit);
  auto primes = kernels::extract_primes(bits, limit);
  return PrimeTable(limit, std::move(bits), std::move(primes));
}

std::vector<std::uint32_t> special_primes_serial(const std::vector<std::uint32_t>& primes,
                                                 const QuadraticIrrational& eta, const Window& w,
                                                 Exponent exponent) {
  std::vector<std::uint32_t> out;
  for (const std::uint32_t p : primes) {
    if (window_test(eta, power_of(p, exponent), w)) out.push_back(p);
  }
  return out;
}

SpecialPrimeSet special_primes(std::shared_ptr<const PrimeTable> table, const QuadraticIrrational& eta,
                               const Window& w, Exponent exponent) {
  if (!table) throw InvalidArgument("special_primes needs a prime table");
  const auto& primes = table->primes();
  std::vector<unsigned char> keep(primes.size(), 0);
  const std::int64_t count = static_cast<std::int64_t>(primes.size());
#pragma omp parallel for schedule(dynamic, 1024)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    keep[ui] = window_test(eta, power_of(primes[ui], exponent), w) ? 1 : 0;
  }
  std::vector<std::uint32_t> members;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (keep[i]) members.push_back(primes[i]);
  }
  return SpecialPrimeSet{std::move(table), eta, w, exponent, std::move(members)};
}

double density_estimate(const SpecialPrimeSet& s) {
  if (!s.source || s.source->count() == 0) throw InvalidArgument("density of an empty prime table");
  return static_cast<double>(s.members.size()) / static_cast<double>(s.source->count());
}

void dump_members(const SpecialPrimeSet& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto p : s.members) out << p << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace fivesq
