#include "fivesq/kernels/ntt.hpp"

#include <bit>
#include <stdexcept>

namespace fivesq::kernels {
namespace {

std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = static_cast<std::uint64_t>((unsigned __int128)r * b % m);
    b = static_cast<std::uint64_t>((unsigned __int128)b * b % m);
    e >>= 1;
  }
  return r;
}

unsigned log2_exact(std::size_t n) {
  if (n == 0 || !std::has_single_bit(n)) throw std::invalid_argument("transform size must be a power of two");
  return static_cast<unsigned>(std::countr_zero(n));
}

std::size_t bit_reverse(std::size_t x, unsigned bits) {
  std::size_t r = 0;
  for (unsigned i = 0; i < bits; ++i) {
    r = (r << 1) | (x & 1);
    x >>= 1;
  }
  return r;
}

struct Plan {
  Montgomery mg;
  std::vector<std::uint32_t> roots;  // w^j, j < n/2, Montgomery form
  std::uint32_t n_inv;               // Montgomery form
};

Plan make_plan(std::size_t n, const NttPrime& prime, bool inverse, bool parallel) {
  const unsigned lg = log2_exact(n);
  if (lg > prime.max_log2) throw std::length_error("transform longer than the prime supports");
  Montgomery mg(prime.mod);
  std::uint64_t w = powmod64(prime.generator, (prime.mod - 1) >> lg, prime.mod);
  if (inverse) w = powmod64(w, prime.mod - 2, prime.mod);
  const std::uint32_t wm = mg.to(static_cast<std::uint32_t>(w));
  const std::size_t half = n / 2;
  std::vector<std::uint32_t> roots(std::max<std::size_t>(half, 1));
  constexpr std::size_t kChunk = 1 << 14;
  const std::int64_t chunks = static_cast<std::int64_t>((roots.size() + kChunk - 1) / kChunk);
#pragma omp parallel for if (parallel)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::size_t start = static_cast<std::size_t>(c) * kChunk;
    const std::size_t stop = std::min(roots.size(), start + kChunk);
    std::uint32_t cur = mg.pow(wm, start);
    for (std::size_t j = start; j < stop; ++j) {
      roots[j] = cur;
      cur = mg.mul(cur, wm);
    }
  }
  const std::uint32_t n_inv =
      mg.to(static_cast<std::uint32_t>(powmod64(n % prime.mod, prime.mod - 2, prime.mod)));
  return Plan{mg, std::move(roots), n_inv};
}

}  // namespace

Montgomery::Montgomery(std::uint32_t mod) : mod_(mod) {
  if ((mod & 1u) == 0) throw std::invalid_argument("Montgomery modulus must be odd");
  std::uint32_t inv = mod;  // Newton iteration on 2-adic inverse
  for (int i = 0; i < 5; ++i) inv *= 2u - mod * inv;
  inv_ = inv;
  one_ = static_cast<std::uint32_t>((std::uint64_t{1} << 32) % mod);
  r2_ = static_cast<std::uint32_t>(((unsigned __int128)1 << 64) % mod);
}

std::uint32_t Montgomery::pow(std::uint32_t base, std::uint64_t exp) const {
  std::uint32_t r = one_;
  while (exp) {
    if (exp & 1) r = mul(r, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return r;
}

namespace serial {

void ntt(std::span<std::uint32_t> a, const NttPrime& prime, bool inverse) {
  const std::size_t n = a.size();
  const unsigned lg = log2_exact(n);
  const Plan plan = make_plan(n, prime, inverse, false);
  const Montgomery& mg = plan.mg;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = bit_reverse(i, lg);
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = n / len;
    for (std::size_t base = 0; base < n; base += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const std::uint32_t u = a[base + j];
        const std::uint32_t v = mg.mul(a[base + j + half], plan.roots[j * stride]);
        a[base + j] = mg.add(u, v);
        a[base + j + half] = mg.sub(u, v);
      }
    }
  }
  if (inverse) {
    for (auto& x : a) x = mg.mul(x, plan.n_inv);
  }
}

}  // namespace serial

namespace omp {

void ntt(std::span<std::uint32_t> a, const NttPrime& prime, bool inverse) {
  const std::size_t n = a.size();
  const unsigned lg = log2_exact(n);
  const Plan plan = make_plan(n, prime, inverse, true);
  const Montgomery& mg = plan.mg;
  const std::int64_t sn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < sn; ++i) {
    const std::size_t j = bit_reverse(static_cast<std::size_t>(i), lg);
    if (static_cast<std::size_t>(i) < j) std::swap(a[static_cast<std::size_t>(i)], a[j]);
  }
  const std::int64_t butterflies = sn / 2;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = n / len;
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < butterflies; ++k) {
      const std::size_t uk = static_cast<std::size_t>(k);
      const std::size_t j = uk & (half - 1);
      const std::size_t pos = (uk - j) * 2 + j;
      const std::uint32_t u = a[pos];
      const std::uint32_t v = mg.mul(a[pos + half], plan.roots[j * stride]);
      a[pos] = mg.add(u, v);
      a[pos + half] = mg.sub(u, v);
    }
  }
  if (inverse) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < sn; ++i) a[static_cast<std::size_t>(i)] = mg.mul(a[static_cast<std::size_t>(i)], plan.n_inv);
  }
}

}  // namespace omp

std::vector<std::uint32_t> fifth_power_mod(std::span<const std::uint64_t> values, std::size_t out_len,
                                           const NttPrime& prime, bool parallel) {
  if (out_len == 0) return {};
  const std::size_t n = std::bit_ceil(2 * out_len);
  const Montgomery mg(prime.mod);
  auto transform = [&](std::vector<std::uint32_t>& v, bool inverse) {
    if (parallel) {
      omp::ntt(v, prime, inverse);
    } else {
      serial::ntt(v, prime, inverse);
    }
  };
  const std::int64_t sn = static_cast<std::int64_t>(n);
  const std::int64_t keep = static_cast<std::int64_t>(out_len);
  auto pointwise = [&](std::vector<std::uint32_t>& dst, const std::vector<std::uint32_t>& rhs) {
#pragma omp parallel for if (parallel) schedule(static)
    for (std::int64_t i = 0; i < sn; ++i) dst[static_cast<std::size_t>(i)] = mg.mul(dst[static_cast<std::size_t>(i)], rhs[static_cast<std::size_t>(i)]);
  };
  auto truncate = [&](std::vector<std::uint32_t>& v) {
    std::fill(v.begin() + keep, v.end(), 0u);
  };

  std::vector<std::uint32_t> base(n, 0u);
  const std::size_t m = std::min(values.size(), out_len);
  for (std::size_t i = 0; i < m; ++i) base[i] = mg.to(static_cast<std::uint32_t>(values[i] % prime.mod));
  transform(base, false);

  std::vector<std::uint32_t> acc = base;
  pointwise(acc, acc);  // v^2
  transform(acc, true);
  truncate(acc);
  transform(acc, false);
  pointwise(acc, acc);  // v^4
  transform(acc, true);
  truncate(acc);
  transform(acc, false);
  pointwise(acc, base);  // v^5
  transform(acc, true);

  std::vector<std::uint32_t> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = mg.from(acc[i]);
  return out;
}

std::uint64_t crt_combine(std::uint32_t r0, std::uint32_t r1) {
  const std::uint64_t m0 = kNttPrimes[0].mod;
  const std::uint64_t m1 = kNttPrimes[1].mod;
  static const std::uint64_t m0_inv = powmod64(m0 % m1, m1 - 2, m1);
  const std::uint64_t diff = (r1 + m1 - (r0 % m1)) % m1;
  const std::uint64_t t = static_cast<std::uint64_t>((unsigned __int128)diff * m0_inv % m1);
  return r0 + m0 * t;
}

}  // namespace fivesq::kernels
