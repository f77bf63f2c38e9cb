#include "fivesq/kernels/sieve.hpp"

#include <algorithm>

namespace fivesq::kernels {
namespace {

PrimeBits all_set(std::uint64_t limit) {
  PrimeBits bits((limit >> 6) + 1, ~std::uint64_t{0});
  // clear everything above limit
  const unsigned tail = (limit & 63) + 1;
  if (tail < 64) bits.back() &= (std::uint64_t{1} << tail) - 1;
  bits[0] &= ~std::uint64_t{3};  // 0 and 1
  return bits;
}

inline void clear_bit(PrimeBits& bits, std::uint64_t n) {
  bits[n >> 6] &= ~(std::uint64_t{1} << (n & 63));
}

std::uint64_t isqrt64(std::uint64_t v) {
  std::uint64_t r = 0;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace

namespace serial {

PrimeBits eratosthenes(std::uint64_t limit) {
  PrimeBits bits = all_set(limit);
  for (std::uint64_t p = 2; p * p <= limit; ++p) {
    if (!test_bit(bits, p)) continue;
    for (std::uint64_t m = p * p; m <= limit; m += p) clear_bit(bits, m);
  }
  return bits;
}

}  // namespace serial

namespace omp {

PrimeBits segmented(std::uint64_t limit, std::uint64_t segment_bits) {
  segment_bits = std::max<std::uint64_t>(64, segment_bits & ~std::uint64_t{63});
  const std::uint64_t root = isqrt64(limit);
  const PrimeBits base_bits = serial::eratosthenes(std::max<std::uint64_t>(root, 2));
  const std::vector<std::uint32_t> base = extract_primes(base_bits, std::max<std::uint64_t>(root, 2));

  PrimeBits bits = all_set(limit);
  const std::int64_t segments = static_cast<std::int64_t>(limit / segment_bits + 1);

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t s = 0; s < segments; ++s) {
    const std::uint64_t lo = static_cast<std::uint64_t>(s) * segment_bits;
    const std::uint64_t hi = std::min(limit, lo + segment_bits - 1);
    for (const std::uint64_t p : base) {
      if (p * p > hi) break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t m = start; m <= hi; m += p) clear_bit(bits, m);
    }
  }
  return bits;
}

}  // namespace omp

std::vector<std::uint32_t> extract_primes(const PrimeBits& bits, std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  for (std::uint64_t w = 0; w < bits.size(); ++w) {
    std::uint64_t word = bits[w];
    while (word) {
      const std::uint64_t n = (w << 6) + static_cast<std::uint64_t>(__builtin_ctzll(word));
      if (n > limit) return primes;
      primes.push_back(static_cast<std::uint32_t>(n));
      word &= word - 1;
    }
  }
  return primes;
}

}  // namespace fivesq::kernels
