#include "fivesq/counting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>

#include "fivesq/error.hpp"
#include "fivesq/kernels/fft.hpp"
#include "fivesq/kernels/ntt.hpp"

namespace fivesq {
namespace {

std::vector<std::uint64_t> sorted_squares(std::span<const std::uint32_t> allowed, std::uint64_t bound) {
  std::vector<std::uint64_t> sq;
  for (const auto p : allowed) {
    const std::uint64_t s = std::uint64_t(p) * p;
    if (s <= bound) sq.push_back(s);
  }
  std::sort(sq.begin(), sq.end());
  sq.erase(std::unique(sq.begin(), sq.end()), sq.end());
  return sq;
}

// Ordered pairs (i, j) with sq[i] + sq[j] == target.
std::uint64_t count_pairs(const std::vector<std::uint64_t>& sq, std::uint64_t target) {
  if (sq.empty()) return 0;
  std::uint64_t found = 0;
  std::size_t lo = 0;
  std::size_t hi = sq.size() - 1;
  while (lo <= hi) {
    const std::uint64_t s = sq[lo] + sq[hi];
    if (s == target) {
      found += lo == hi ? 1 : 2;
      ++lo;
      if (hi == 0) break;
      --hi;
    } else if (s < target) {
      ++lo;
    } else {
      if (hi == 0) break;
      --hi;
    }
  }
  return found;
}

std::uint64_t count_from(const std::vector<std::uint64_t>& sq, std::uint64_t remaining, int slots) {
  if (slots == 2) return count_pairs(sq, remaining);
  std::uint64_t total = 0;
  const std::uint64_t smallest = sq.front();
  for (const auto s : sq) {
    if (s + smallest * static_cast<std::uint64_t>(slots - 1) > remaining) break;
    total += count_from(sq, remaining - s, slots - 1);
  }
  return total;
}

std::uint64_t ipow4(std::uint64_t k) { return k * k * k * k; }

}  // namespace

std::uint64_t count_naive(std::uint64_t n, std::span<const std::uint32_t> allowed) {
  if (n > kMaxNaiveN) throw InvalidArgument("count_naive is an oracle for N <= 1e6");
  const auto sq = sorted_squares(allowed, n);
  if (sq.empty()) return 0;
  return count_from(sq, n, 5);
}

RepCountTable count_range(std::uint64_t nmax, std::span<const std::uint32_t> allowed, Exec exec) {
  if (nmax == 0 || nmax > kMaxCountRange) {
    throw InvalidArgument("count_range needs 1 <= nmax <= 1e8, got " + std::to_string(nmax));
  }
  const auto sq = sorted_squares(allowed, nmax);
  RepCountTable table{nmax, std::vector<std::uint64_t>(nmax + 1, 0)};
  if (sq.empty()) return table;

  // counts[N] <= K^4: four choices fix the fifth.
  const std::uint64_t k = sq.size();
  const unsigned __int128 capacity =
      (unsigned __int128)kernels::kNttPrimes[0].mod * kernels::kNttPrimes[1].mod;
  if ((unsigned __int128)ipow4(k) >= capacity) {
    throw CapacityExceeded("count_range: " + std::to_string(k) + " prime squares exceed CRT capacity");
  }

  std::vector<std::uint64_t> indicator(nmax + 1, 0);
  for (const auto s : sq) indicator[s] = 1;
  const bool parallel = exec == Exec::Parallel;
  const auto r0 = kernels::fifth_power_mod(indicator, nmax + 1, kernels::kNttPrimes[0], parallel);
  const auto r1 = kernels::fifth_power_mod(indicator, nmax + 1, kernels::kNttPrimes[1], parallel);
  const std::int64_t len = static_cast<std::int64_t>(nmax + 1);
#pragma omp parallel for if (parallel) schedule(static)
  for (std::int64_t i = 0; i < len; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    table.counts[ui] = kernels::crt_combine(r0[ui], r1[ui]);
  }
  return table;
}

namespace {

double norm1(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

struct Audited {
  std::vector<double> v;
  double err = 0.0;  // per-entry bound
};

Audited audited_convolve(const Audited& x, const Audited& y, std::size_t out_len, bool parallel) {
  Audited z;
  z.v = kernels::convolve_real(x.v, y.v, out_len, parallel);
  const double slack = 1.0 + 1e-12;
  const double len = static_cast<double>(out_len);
  const double x1 = (norm1(x.v) + x.err * len) * slack;
  const double y1 = (norm1(y.v) + y.err * len) * slack;
  const double fft_err = norm2(x.v) * norm2(y.v) * slack * kernels::fft_error_factor(2 * out_len);
  z.err = (fft_err + x.err * y1 + y.err * x1 + x.err * y.err * len) * slack;
  return z;
}

}  // namespace

WeightedRepTable weighted_count_range(std::uint64_t nmax, const PrimeWeights& weights, double tolerance,
                                      Exec exec) {
  if (nmax == 0 || nmax > kMaxCountRange) {
    throw InvalidArgument("weighted_count_range needs 1 <= nmax <= 1e8");
  }
  Audited base;
  base.v.assign(nmax + 1, 0.0);
  for (const auto& [p, w] : weights) {
    if (!(w >= 0.0 && w <= 1.0)) throw InvalidArgument("weights must lie in [0, 1]");
    const std::uint64_t s = std::uint64_t(p) * p;
    if (s <= nmax) base.v[s] = w;
  }
  const bool parallel = exec == Exec::Parallel;
  const std::size_t len = nmax + 1;
  const Audited two = audited_convolve(base, base, len, parallel);
  const Audited four = audited_convolve(two, two, len, parallel);
  Audited five = audited_convolve(four, base, len, parallel);
  if (!(five.err <= tolerance)) {
    throw AuditFailure("weighted_count_range: certified error " + std::to_string(five.err) +
                       " exceeds tolerance " + std::to_string(tolerance));
  }
  return WeightedRepTable{nmax, std::move(five.v), five.err};
}

DyadicWeights DyadicWeights::round_down(const std::map<std::uint32_t, Rational>& w, unsigned scale_bits) {
  DyadicWeights out;
  out.scale_bits = scale_bits;
  const Integer scale = Integer(1) << scale_bits;
  for (const auto& [p, q] : w) {
    if (sgn(q) < 0 || q > 1) throw InvalidArgument("weights must lie in [0, 1]");
    out.numerators[p] = floor(q * Rational(scale)).get_ui();
  }
  return out;
}

DyadicWeights DyadicWeights::round_up(const std::map<std::uint32_t, Rational>& w, unsigned scale_bits) {
  DyadicWeights out;
  out.scale_bits = scale_bits;
  const Integer scale = Integer(1) << scale_bits;
  for (const auto& [p, q] : w) {
    if (sgn(q) < 0 || q > 1) throw InvalidArgument("weights must lie in [0, 1]");
    out.numerators[p] = Integer(-floor(-q * Rational(scale))).get_ui();
  }
  return out;
}

Integer to_integer(kernels::u128 v) {
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  const auto lo = static_cast<std::uint64_t>(v);
  return (to_integer(hi) << 64) + to_integer(lo);
}

Rational ExactWeightedTable::value(std::uint64_t n) const {
  Rational q(to_integer(scaled.at(n)), Integer(1) << (5 * scale_bits));
  q.canonicalize();
  return q;
}

double ExactWeightedTable::approx(std::uint64_t n) const { return value(n).get_d(); }

ExactWeightedTable weighted_count_range_exact(std::uint64_t nmax, const DyadicWeights& weights, Exec exec) {
  if (nmax == 0 || nmax > kMaxExactWeighted) {
    throw CapacityExceeded("exact weighted mode is limited to nmax <= 1e5");
  }
  if (weights.scale_bits > 24) throw CapacityExceeded("exact weighted mode supports at most 24 scale bits");
  const std::uint64_t one = std::uint64_t{1} << weights.scale_bits;
  std::vector<kernels::SparseTerm> base;
  for (const auto& [p, num] : weights.numerators) {
    if (num > one) throw InvalidArgument("dyadic weight numerator exceeds 2^scale_bits");
    const std::uint64_t s = std::uint64_t(p) * p;
    if (s <= nmax && num != 0) base.push_back({s, num});
  }
  std::sort(base.begin(), base.end(), [](const auto& l, const auto& r) { return l.index < r.index; });

  // Largest entry is at most K^4 * (2^s)^5.
  const Integer bound = Integer(static_cast<unsigned long>(ipow4(base.size()))) << (5 * weights.scale_bits);
  if (bound >= (Integer(1) << 128)) {
    throw CapacityExceeded("exact weighted sums could overflow 128 bits; lower scale_bits");
  }

  const std::size_t len = nmax + 1;
  auto conv = [&](std::span<const kernels::SparseTerm> x, std::span<const kernels::SparseTerm> y) {
    return exec == Exec::Parallel ? kernels::omp::sparse_convolve(x, y, len)
                                  : kernels::serial::sparse_convolve(x, y, len);
  };
  const auto two = kernels::to_sparse(conv(base, base));
  const auto four = kernels::to_sparse(conv(two, two));
  ExactWeightedTable table{nmax, weights.scale_bits, conv(four, base)};
  return table;
}

namespace {

constexpr std::array<char, 4> kMagic = {'F', 'S', 'Q', 'C'};
constexpr std::uint32_t kBinaryVersion = 1;

template <typename T>
void put_le(std::ostream& out, T v) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(bytes[i]) << (8 * i);
  return v;
}

}  // namespace

void save_counts_binary(const RepCountTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kBinaryVersion);
  put_le<std::uint64_t>(out, table.nmax);
  for (const auto c : table.counts) put_le<std::uint64_t>(out, c);
  if (!out) throw IoError("write failed for " + path.string());
}

RepCountTable load_counts_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw IoError(path.string() + " is not a count table dump");
  if (get_le<std::uint32_t>(in) != kBinaryVersion) throw IoError(path.string() + ": unsupported dump version");
  RepCountTable table;
  table.nmax = get_le<std::uint64_t>(in);
  if (!in || table.nmax > kMaxCountRange) throw IoError(path.string() + ": corrupt header");
  table.counts.resize(table.nmax + 1);
  for (auto& c : table.counts) c = get_le<std::uint64_t>(in);
  if (!in) throw IoError(path.string() + ": truncated dump");
  return table;
}

}  // namespace fivesq
