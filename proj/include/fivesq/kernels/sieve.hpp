#pragma once

#include <cstdint>
#include <vector>

namespace fivesq::kernels {

// Bit n of the returned words is set iff n is prime, for 0 <= n <= limit.
using PrimeBits = std::vector<std::uint64_t>;

inline bool test_bit(const PrimeBits& bits, std::uint64_t n) {
  return (bits[n >> 6] >> (n & 63)) & 1u;
}

namespace serial {
// Plain Eratosthenes over the whole range.
PrimeBits eratosthenes(std::uint64_t limit);
}  // namespace serial

namespace omp {
// Segmented Eratosthenes; segments are word aligned and sieved concurrently.
PrimeBits segmented(std::uint64_t limit, std::uint64_t segment_bits = std::uint64_t{1} << 18);
}  // namespace omp

std::vector<std::uint32_t> extract_primes(const PrimeBits& bits, std::uint64_t limit);

}  // namespace fivesq::kernels
