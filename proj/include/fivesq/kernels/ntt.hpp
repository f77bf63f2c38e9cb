#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fivesq::kernels {

// Primes of the form c*2^k + 1 with k >= 28, so transforms up to 2^28 points
// exist. Their product (~1.12e19) bounds what CRT can reconstruct.
struct NttPrime {
  std::uint32_t mod;
  std::uint32_t generator;
  unsigned max_log2;
};

inline constexpr NttPrime kNttPrimes[2] = {{3221225473u, 5u, 30u}, {3489660929u, 3u, 28u}};

// Montgomery arithmetic modulo an odd 32-bit prime, R = 2^32.
class Montgomery {
 public:
  explicit Montgomery(std::uint32_t mod);

  std::uint32_t mod() const { return mod_; }
  std::uint32_t to(std::uint32_t x) const { return reduce(std::uint64_t(x) * r2_); }
  std::uint32_t from(std::uint32_t x) const { return reduce(x); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return reduce(std::uint64_t(a) * b); }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    const std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<std::uint32_t>(s >= mod_ ? s - mod_ : s);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + (mod_ - b); }
  std::uint32_t pow(std::uint32_t base, std::uint64_t exp) const;
  std::uint32_t one() const { return one_; }

  std::uint32_t reduce(std::uint64_t t) const {
    const std::uint32_t m = static_cast<std::uint32_t>(t) * inv_;
    const std::uint64_t mm = std::uint64_t(m) * mod_;
    const std::uint32_t th = static_cast<std::uint32_t>(t >> 32);
    const std::uint32_t mh = static_cast<std::uint32_t>(mm >> 32);
    return th >= mh ? th - mh : th + (mod_ - mh);
  }

 private:
  std::uint32_t mod_;
  std::uint32_t inv_;  // mod^-1 mod 2^32
  std::uint32_t r2_;   // 2^64 mod mod
  std::uint32_t one_;  // 2^32 mod mod
};

// In-place transforms on values in Montgomery form; size must be a power of two.
namespace serial {
void ntt(std::span<std::uint32_t> a, const NttPrime& prime, bool inverse);
}  // namespace serial

namespace omp {
void ntt(std::span<std::uint32_t> a, const NttPrime& prime, bool inverse);
}  // namespace omp

// Truncated power of a nonnegative integer sequence modulo prime:
// returns the first out_len coefficients of values^5, computed as
// ((v*v) truncated)^2 truncated, times v, each step by transform.
std::vector<std::uint32_t> fifth_power_mod(std::span<const std::uint64_t> values, std::size_t out_len,
                                           const NttPrime& prime, bool parallel);

// Residues modulo kNttPrimes[0] and kNttPrimes[1] to the unique value below
// their product.
std::uint64_t crt_combine(std::uint32_t r0, std::uint32_t r1);

}  // namespace fivesq::kernels
