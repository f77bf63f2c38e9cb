#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "fivesq/kernels/exec.hpp"
#include "fivesq/kernels/sparse_conv.hpp"
#include "fivesq/numeric.hpp"

namespace fivesq {

inline constexpr std::uint64_t kMaxCountRange = 100'000'000;
inline constexpr std::uint64_t kMaxNaiveN = 1'000'000;
inline constexpr std::uint64_t kMaxExactWeighted = 100'000;

// counts[N] = number of ordered 5-tuples of allowed primes with sum of squares N.
struct RepCountTable {
  std::uint64_t nmax = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t at(std::uint64_t n) const { return n <= nmax ? counts[n] : 0; }
};

// Direct enumeration; the oracle for count_range. N <= kMaxNaiveN.
std::uint64_t count_naive(std::uint64_t n, std::span<const std::uint32_t> allowed);

// Exact table by fifth power of the prime-square indicator, carried out
// modulo two transform primes and recombined by CRT.
RepCountTable count_range(std::uint64_t nmax, std::span<const std::uint32_t> allowed,
                          Exec exec = Exec::Parallel);

using PrimeWeights = std::map<std::uint32_t, double>;

// values[N] = sum over tuples with square sum N of the product of weights,
// each entry within err_bound of the exact value.
struct WeightedRepTable {
  std::uint64_t nmax = 0;
  std::vector<double> values;
  double err_bound = 0.0;
};

// Floating transform mode with an a posteriori audit. Throws AuditFailure when
// the certified bound exceeds tolerance.
WeightedRepTable weighted_count_range(std::uint64_t nmax, const PrimeWeights& weights,
                                      double tolerance = std::numeric_limits<double>::infinity(),
                                      Exec exec = Exec::Parallel);

// Weights of the form numerator / 2^scale_bits with numerator <= 2^scale_bits.
struct DyadicWeights {
  unsigned scale_bits = 20;
  std::map<std::uint32_t, std::uint64_t> numerators;

  static DyadicWeights round_down(const std::map<std::uint32_t, Rational>& w, unsigned scale_bits);
  static DyadicWeights round_up(const std::map<std::uint32_t, Rational>& w, unsigned scale_bits);
};

// Exact mode: scaled[N] / 2^(5*scale_bits) is the weighted count, no rounding.
struct ExactWeightedTable {
  std::uint64_t nmax = 0;
  unsigned scale_bits = 0;
  std::vector<kernels::u128> scaled;

  Rational value(std::uint64_t n) const;
  double approx(std::uint64_t n) const;
};

// nmax <= kMaxExactWeighted; throws CapacityExceeded if 128-bit sums could overflow.
ExactWeightedTable weighted_count_range_exact(std::uint64_t nmax, const DyadicWeights& weights,
                                              Exec exec = Exec::Parallel);

Integer to_integer(kernels::u128 v);

// Binary table dump: "FSQC", u32 version, u64 nmax, then nmax+1 counts, all
// little-endian 64-bit after the magic.
void save_counts_binary(const RepCountTable& table, const std::filesystem::path& path);
RepCountTable load_counts_binary(const std::filesystem::path& path);

}  // namespace fivesq
