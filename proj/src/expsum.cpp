#include "fivesq/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>

#include "fivesq/error.hpp"
#include "fivesq/primes.hpp"

namespace fivesq {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<std::uint32_t> primes_for(std::uint64_t n) {
  const std::uint64_t root = std::max<std::uint64_t>(isqrt_u64(n), 2);
  return sieve(root).primes();
}

}  // namespace

double reduced_phase(double x, std::uint64_t s) {
  const double xf = x - std::floor(x);
  const auto sd = static_cast<double>(s);
  const double prod = xf * sd;
  const double low = std::fma(xf, sd, -prod);  // xf * sd == prod + low exactly
  double phase = (prod - std::floor(prod)) + low;
  phase -= std::floor(phase);
  return phase;
}

std::complex<double> eval_S(double x, std::uint64_t n, std::span<const std::uint32_t> primes) {
  if (n < 4) throw InvalidArgument("S(x) needs N >= 4");
  std::complex<double> sum{0.0, 0.0};
  for (const auto p : primes) {
    const std::uint64_t sq = std::uint64_t(p) * p;
    if (sq > n) break;
    const double angle = kTwoPi * reduced_phase(x, sq);
    sum += std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return sum;
}

std::complex<double> eval_S(double x, std::uint64_t n) {
  const auto primes = primes_for(n);
  return eval_S(x, n, primes);
}

std::complex<double> weighted_S(double x, std::uint64_t n, const PrimeWeights& weights) {
  if (n < 4) throw InvalidArgument("S(x) needs N >= 4");
  std::complex<double> sum{0.0, 0.0};
  for (const auto& [p, w] : weights) {
    const std::uint64_t sq = std::uint64_t(p) * p;
    if (sq > n || w == 0.0) continue;
    const double angle = kTwoPi * reduced_phase(x, sq);
    sum += w * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return sum;
}

std::string to_string(ArcKind kind) { return kind == ArcKind::Major ? "major" : "minor"; }

ArcParams arc_params(std::uint64_t n, double epsilon_q) {
  if (n < 2) throw InvalidArgument("arc classification needs N >= 2");
  if (!(epsilon_q > 0.0 && epsilon_q < 0.5)) throw InvalidArgument("epsilon_q must lie in (0, 0.5)");
  const double ln = std::log(static_cast<double>(n));
  const auto tau = static_cast<std::uint64_t>(std::floor(std::exp((1.0 - epsilon_q) * ln)));
  const auto thr = static_cast<std::uint64_t>(std::floor(std::exp(epsilon_q * ln)));
  return ArcParams{std::max<std::uint64_t>(tau, 1), std::max<std::uint64_t>(thr, 1)};
}

ArcLabel arc_classify(const FixedPointReal& t, std::uint64_t n, double epsilon_q) {
  const ArcParams params = arc_params(n, epsilon_q);
  const Rational lo(Integer(-1), to_integer(params.tau));
  const FixedPointReal reduced = t.reduce_into(lo);
  RationalApprox approx = dirichlet_approx(reduced, params.tau);
  const ArcKind kind = approx.q <= to_integer(params.q_threshold) ? ArcKind::Major : ArcKind::Minor;
  return ArcLabel{kind, std::move(approx), params.tau, params.q_threshold};
}

RationalApprox shifted_approx(const FixedPointReal& t, std::int64_t mprime, const QuadraticIrrational& eta,
                              std::uint64_t tau) {
  if (mprime > 1'000'000 || mprime < -1'000'000) throw InvalidArgument("|m'| must be at most 1e6");
  const int tau_bits = static_cast<int>(std::ceil(std::log2(static_cast<double>(tau) + 1.0)));
  const int bits = std::max(t.frac_bits(), 2 * tau_bits + 64);
  const FixedPointReal shifted = t + multiple(eta, to_integer(mprime), bits);
  return dirichlet_approx(shifted, tau);
}

DenominatorCorridor denominator_corridor(std::uint64_t n, std::uint64_t tau) {
  const double nd = static_cast<double>(n);
  const double root_tau = std::sqrt(static_cast<double>(tau));
  return {root_tau * std::pow(nd, -0.01015) * std::log(nd), root_tau * std::pow(nd, 0.001)};
}

std::vector<ScanRow> minor_arc_scan(std::uint64_t n, std::uint64_t samples, std::uint64_t seed, double epsilon_q,
                                    Exec exec) {
  if (samples == 0 || samples > 100'000) throw InvalidArgument("samples must lie in [1, 1e5]");
  const auto primes = primes_for(n);
  const double count = static_cast<double>(
      std::upper_bound(primes.begin(), primes.end(), isqrt_u64(n)) - primes.begin());

  std::mt19937_64 rng(seed);
  std::vector<double> ts(samples);
  for (auto& t : ts) t = std::ldexp(static_cast<double>(rng() >> 11), -53);

  std::vector<ScanRow> rows(samples);
  std::exception_ptr failure;
  const std::int64_t total = static_cast<std::int64_t>(samples);
#pragma omp parallel for if (exec == Exec::Parallel) schedule(dynamic, 16)
  for (std::int64_t i = 0; i < total; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    try {
      const double t = ts[ui];
      const ArcLabel label = arc_classify(FixedPointReal::from_double(t, 128), n, epsilon_q);
      const double mag = std::abs(eval_S(t, n, primes));
      rows[ui] = ScanRow{t, label.approx.d, label.approx.q, label.kind, mag, count > 0 ? mag / count : 0.0};
    } catch (...) {
#pragma omp critical(minor_arc_scan_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace fivesq
