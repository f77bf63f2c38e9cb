#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <vector>

#include "fivesq/diophantine.hpp"
#include "fivesq/kernels/sieve.hpp"
#include "fivesq/window.hpp"

namespace fivesq {

inline constexpr std::uint64_t kMaxSieveLimit = 1'000'000'000;
// Above this the segmented kernel is used so the working set stays bounded.
inline constexpr std::uint64_t kSegmentedThreshold = 100'000'000;

class PrimeTable {
 public:
  std::uint64_t limit() const { return limit_; }
  bool is_prime(std::uint64_t n) const { return n <= limit_ && kernels::test_bit(bits_, n); }
  const std::vector<std::uint32_t>& primes() const { return primes_; }
  std::size_t count() const { return primes_.size(); }
  // Primes p with p <= bound (bound may exceed limit only up to limit).
  std::vector<std::uint32_t> primes_up_to(std::uint64_t bound) const;

 private:
  friend PrimeTable sieve(std::uint64_t limit);
  PrimeTable(std::uint64_t limit, kernels::PrimeBits bits, std::vector<std::uint32_t> primes)
      : limit_(limit), bits_(std::move(bits)), primes_(std::move(primes)) {}
  std::uint64_t limit_;
  kernels::PrimeBits bits_;
  std::vector<std::uint32_t> primes_;
};

// 2 <= limit <= kMaxSieveLimit.
PrimeTable sieve(std::uint64_t limit);

enum class Exponent : int { Linear = 1, Square = 2 };

struct SpecialPrimeSet {
  std::shared_ptr<const PrimeTable> source;
  QuadraticIrrational eta;
  Window window;
  Exponent exponent;
  std::vector<std::uint32_t> members;
};

// Exact filter: p is kept iff a < {eta * p^exponent} < b.
SpecialPrimeSet special_primes(std::shared_ptr<const PrimeTable> table, const QuadraticIrrational& eta,
                               const Window& w, Exponent exponent);

// Serial reference of the filter loop, kept for tests and the benchmark.
std::vector<std::uint32_t> special_primes_serial(const std::vector<std::uint32_t>& primes,
                                                 const QuadraticIrrational& eta, const Window& w,
                                                 Exponent exponent);

// |members| / pi(limit)
double density_estimate(const SpecialPrimeSet& s);

// One decimal prime per line.
void dump_members(const SpecialPrimeSet& s, const std::filesystem::path& path);

}  // namespace fivesq
