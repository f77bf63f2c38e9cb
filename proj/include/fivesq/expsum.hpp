#pragma once

// Exponential sums over prime squares, S(x) = sum_{p^2 <= N} e(x p^2), and the
// major/minor arc split driven by Dirichlet approximation.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fivesq/counting.hpp"
#include "fivesq/diophantine.hpp"
#include "fivesq/kernels/exec.hpp"

namespace fivesq {

// {x * s} for an integer s < 2^53, with x * s formed exactly as a double pair.
double reduced_phase(double x, std::uint64_t s);

// Each phase is accurate to a few ulps of 1, so |error| <= pi(sqrt N) * 2^-45.
std::complex<double> eval_S(double x, std::uint64_t n, std::span<const std::uint32_t> primes);
std::complex<double> eval_S(double x, std::uint64_t n);

// Primes absent from the map carry weight 0.
std::complex<double> weighted_S(double x, std::uint64_t n, const PrimeWeights& weights);

enum class ArcKind { Major, Minor };
std::string to_string(ArcKind kind);

struct ArcLabel {
  ArcKind kind;
  RationalApprox approx;
  std::uint64_t tau;
  std::uint64_t q_threshold;
};

struct ArcParams {
  std::uint64_t tau;          // floor(N^(1 - eps))
  std::uint64_t q_threshold;  // max(1, floor(N^eps))
};

inline constexpr double kDefaultArcEpsilon = 0.001;

ArcParams arc_params(std::uint64_t n, double epsilon_q = kDefaultArcEpsilon);

// Reduces t into [-1/tau, 1 - 1/tau), approximates, and labels Major when
// q <= q_threshold.
ArcLabel arc_classify(const FixedPointReal& t, std::uint64_t n, double epsilon_q = kDefaultArcEpsilon);

// X/Y approximating t + mprime * eta with Y <= tau and |t + m' eta - X/Y| <= 1/(Y tau) <= 1/Y^2.
RationalApprox shifted_approx(const FixedPointReal& t, std::int64_t mprime, const QuadraticIrrational& eta,
                              std::uint64_t tau);

// Diagnostic corridor for Y: (sqrt(tau) N^-0.01015 ln N, sqrt(tau) N^0.001).
struct DenominatorCorridor {
  double lo;
  double hi;
  bool contains(double y) const { return lo < y && y < hi; }
};
DenominatorCorridor denominator_corridor(std::uint64_t n, std::uint64_t tau);

struct ScanRow {
  double t;
  Integer d;
  Integer q;
  ArcKind kind;
  double abs_s;
  double normalized;
};

// Seeded sample of t in [0, 1), labelled and measured. Report only.
std::vector<ScanRow> minor_arc_scan(std::uint64_t n, std::uint64_t samples, std::uint64_t seed,
                                    double epsilon_q = kDefaultArcEpsilon, Exec exec = Exec::Parallel);

}  // namespace fivesq
