// Serial reference kernels against their OpenMP twins.

#include <benchmark/benchmark.h>

#include <complex>
#include <numeric>
#include <vector>

#include "fivesq/counting.hpp"
#include "fivesq/kernels/fft.hpp"
#include "fivesq/kernels/ntt.hpp"
#include "fivesq/kernels/sieve.hpp"
#include "fivesq/primes.hpp"

using namespace fivesq;

static void BM_SieveSerial(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::eratosthenes(limit));
}
BENCHMARK(BM_SieveSerial)->Arg(1'000'000)->Arg(10'000'000);

static void BM_SieveSegmented(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::segmented(limit));
}
BENCHMARK(BM_SieveSegmented)->Arg(1'000'000)->Arg(10'000'000);

template <bool Parallel>
static void BM_Ntt(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::uint32_t> data(n);
  std::iota(data.begin(), data.end(), 1u);
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::omp::ntt(data, kernels::kNttPrimes[0], false);
    } else {
      kernels::serial::ntt(data, kernels::kNttPrimes[0], false);
    }
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_Ntt<false>)->Arg(1 << 18)->Arg(1 << 22);
BENCHMARK(BM_Ntt<true>)->Arg(1 << 18)->Arg(1 << 22);

template <bool Parallel>
static void BM_Fft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::complex<double>> data(n, {1.0, 0.5});
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::omp::fft(data, false);
    } else {
      kernels::serial::fft(data, false);
    }
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_Fft<false>)->Arg(1 << 18)->Arg(1 << 20);
BENCHMARK(BM_Fft<true>)->Arg(1 << 18)->Arg(1 << 20);

template <Exec E>
static void BM_CountRange(benchmark::State& state) {
  const auto nmax = static_cast<std::uint64_t>(state.range(0));
  const PrimeTable table = sieve(1415);
  for (auto _ : state) benchmark::DoNotOptimize(count_range(nmax, table.primes(), E));
}
BENCHMARK(BM_CountRange<Exec::Serial>)->Arg(200'000)->Arg(2'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountRange<Exec::Parallel>)->Arg(200'000)->Arg(2'000'000)->Unit(benchmark::kMillisecond);

static void BM_SpecialSerial(benchmark::State& state) {
  const auto table = std::make_shared<const PrimeTable>(sieve(100'000));
  const auto eta = QuadraticIrrational::make(0, 2, 1);
  const auto w = Window::make(Rational(1, 10), Rational(3, 5));
  for (auto _ : state) benchmark::DoNotOptimize(special_primes_serial(table->primes(), eta, w, Exponent::Square));
}
BENCHMARK(BM_SpecialSerial)->Unit(benchmark::kMillisecond);

static void BM_SpecialParallel(benchmark::State& state) {
  const auto table = std::make_shared<const PrimeTable>(sieve(100'000));
  const auto eta = QuadraticIrrational::make(0, 2, 1);
  const auto w = Window::make(Rational(1, 10), Rational(3, 5));
  for (auto _ : state) benchmark::DoNotOptimize(special_primes(table, eta, w, Exponent::Square));
}
BENCHMARK(BM_SpecialParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
