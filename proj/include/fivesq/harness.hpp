#pragma once

// Experiment drivers: J vs I*sigma vs I*L^5, the linear-filter control, the
// smoothed sandwich, and the growth of I.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fivesq/counting.hpp"
#include "fivesq/diophantine.hpp"
#include "fivesq/primes.hpp"
#include "fivesq/report.hpp"
#include "fivesq/window.hpp"

namespace fivesq {

struct Residue {
  std::uint64_t r = 5;
  std::uint64_t m = 24;
  bool matches(std::uint64_t n) const { return n % m == r % m; }
};

struct ExperimentConfig {
  QuadraticIrrational eta = QuadraticIrrational::make(0, 2, 1);
  Window window = Window::make(Rational(1, 10), Rational(3, 5));
  Exponent exponent = Exponent::Square;
  std::uint64_t nmin = 1;
  std::uint64_t nmax = 100'000;
  std::optional<Residue> residue = Residue{};
  double tol = 1e-10;
  std::filesystem::path output = "-";
  ReportFormat format = ReportFormat::Csv;
  std::uint64_t seed = 1;

  void validate() const;
  std::vector<std::uint64_t> retained_ns() const;
};

struct VerifyRow {
  std::uint64_t n;
  std::uint64_t i;
  std::uint64_t j;
  double sigma;
  double naive;
  std::optional<double> ratio;
  double abs_err_sigma;
  double abs_err_naive;
};

struct VerifySummary {
  std::size_t rows = 0;
  std::size_t used = 0;  // rows with I > 0
  double rmse_sigma = 0.0;
  double rmse_naive = 0.0;
  double correlation = 0.0;
  double median_rel_dev_sigma = 0.0;  // |J - I sigma| / (I sigma)
  double median_rel_dev_naive = 0.0;  // |J - I L^5| / (I L^5)
  double mean_sigma = 0.0;
};

struct VerifyResult {
  std::vector<VerifyRow> rows;
  VerifySummary summary;
};

VerifyResult run_verify(const ExperimentConfig& cfg);
VerifyResult run_linear_remark(const ExperimentConfig& cfg);

struct SandwichRow {
  std::uint64_t n;
  double j1;
  std::uint64_t j;
  double j2;
};

struct SandwichResult {
  std::vector<SandwichRow> rows;  // retained N only
  std::uint64_t checked = 0;      // every N in [nmin, nmax]
  std::uint64_t violations = 0;
  double gap = 0.0;  // max (J2 - J1) / max(J, 1)
  bool passed() const { return violations == 0; }
};

// Dyadic precision of the exact sandwich weights.
inline constexpr unsigned kSandwichScaleBits = 20;

SandwichResult run_sandwich(const ExperimentConfig& cfg, const Rational& delta, unsigned r);

struct GrowthRow {
  std::uint64_t n;
  std::uint64_t i;
  double normalized;  // I log^5 N / N^1.5
};

struct GrowthResult {
  std::vector<GrowthRow> rows;
  std::size_t zeros = 0;
  double spread = 0.0;  // max/min of normalized over the top decade
  // Same measures over N outside the residue class, report only.
  std::size_t control_zeros = 0;
  double control_spread = 0.0;
};

GrowthResult run_growth_check(const ExperimentConfig& cfg);

Report to_report(const VerifyResult& result);
Report to_report(const SandwichResult& result);
Report to_report(const GrowthResult& result);
std::string describe(const VerifySummary& s);

}  // namespace fivesq
