#include "fivesq/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fivesq/error.hpp"
#include "fivesq/sigma.hpp"
#include "fivesq/smoothing.hpp"

namespace fivesq {
namespace {

std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::shared_ptr<const PrimeTable> primes_for_squares(std::uint64_t nmax) {
  return std::make_shared<const PrimeTable>(sieve(std::max<std::uint64_t>(isqrt_u64(nmax), 2)));
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2) return *mid;
  const double hi = *mid;
  const double lo = *std::max_element(v.begin(), mid);
  return 0.5 * (lo + hi);
}

VerifySummary summarize(const std::vector<VerifyRow>& rows, double naive) {
  VerifySummary s;
  s.rows = rows.size();
  double sum_sigma = 0.0;
  double se_sigma = 0.0, se_naive = 0.0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
  std::vector<double> dev_sigma, dev_naive;
  for (const auto& row : rows) {
    sum_sigma += row.sigma;
    if (!row.ratio) continue;
    ++s.used;
    const double r = *row.ratio;
    se_sigma += (r - row.sigma) * (r - row.sigma);
    se_naive += (r - naive) * (r - naive);
    sx += r;
    sy += row.sigma;
    sxx += r * r;
    syy += row.sigma * row.sigma;
    sxy += r * row.sigma;
    const double expected = static_cast<double>(row.i) * row.sigma;
    if (expected > 0.0) dev_sigma.push_back(row.abs_err_sigma / expected);
    dev_naive.push_back(row.abs_err_naive / (static_cast<double>(row.i) * naive));
  }
  if (!rows.empty()) s.mean_sigma = sum_sigma / static_cast<double>(rows.size());
  if (s.used == 0) {
    s.rmse_sigma = s.rmse_naive = s.correlation = std::numeric_limits<double>::quiet_NaN();
    s.median_rel_dev_sigma = s.median_rel_dev_naive = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  const double n = static_cast<double>(s.used);
  s.rmse_sigma = std::sqrt(se_sigma / n);
  s.rmse_naive = std::sqrt(se_naive / n);
  const double cov = sxy / n - (sx / n) * (sy / n);
  const double vx = sxx / n - (sx / n) * (sx / n);
  const double vy = syy / n - (sy / n) * (sy / n);
  s.correlation = (vx > 0.0 && vy > 0.0) ? cov / std::sqrt(vx * vy) : std::numeric_limits<double>::quiet_NaN();
  s.median_rel_dev_sigma = median(std::move(dev_sigma));
  s.median_rel_dev_naive = median(std::move(dev_naive));
  return s;
}

VerifyResult verify_pipeline(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.nmax > kMaxCountRange) throw InvalidArgument("verify needs nmax <= 1e8");
  const auto table = primes_for_squares(cfg.nmax);
  const SpecialPrimeSet special = special_primes(table, cfg.eta, cfg.window, cfg.exponent);
  const RepCountTable all = count_range(cfg.nmax, table->primes());
  const RepCountTable restricted = count_range(cfg.nmax, special.members);

  const auto ns = cfg.retained_ns();
  const double naive = std::pow(cfg.window.length_double(), 5);
  VerifyResult result;
  result.rows.reserve(ns.size());
  if (!ns.empty()) {
    const auto sigmas = sigma_profile(cfg.eta, cfg.window, ns, cfg.tol);
    for (std::size_t k = 0; k < ns.size(); ++k) {
      const std::uint64_t n = ns[k];
      const std::uint64_t i = all.at(n);
      const std::uint64_t j = restricted.at(n);
      if (j > i) throw Error("internal: J(" + std::to_string(n) + ") exceeds I");
      const double sigma = sigmas[k].second.value;
      const double id = static_cast<double>(i);
      const double jd = static_cast<double>(j);
      VerifyRow row{n, i, j, sigma, naive, std::nullopt, std::abs(jd - id * sigma), std::abs(jd - id * naive)};
      if (i > 0) row.ratio = jd / id;
      result.rows.push_back(row);
    }
  }
  result.summary = summarize(result.rows, naive);
  return result;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (nmin == 0 || nmin > nmax) throw InvalidArgument("need 1 <= nmin <= nmax");
  if (residue && residue->m == 0) throw InvalidArgument("residue modulus must be positive");
  if (!(tol >= 1e-12)) throw InvalidArgument("tol must be at least 1e-12");
}

std::vector<std::uint64_t> ExperimentConfig::retained_ns() const {
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = nmin; n <= nmax; ++n) {
    if (!residue || residue->matches(n)) ns.push_back(n);
  }
  return ns;
}

VerifyResult run_verify(const ExperimentConfig& cfg) {
  if (cfg.exponent != Exponent::Square) throw InvalidArgument("verify filters by {eta p^2}; exponent must be 2");
  return verify_pipeline(cfg);
}

VerifyResult run_linear_remark(const ExperimentConfig& cfg) {
  if (cfg.exponent != Exponent::Linear) throw InvalidArgument("linear-remark filters by {eta p}; exponent must be 1");
  return verify_pipeline(cfg);
}

SandwichResult run_sandwich(const ExperimentConfig& cfg, const Rational& delta, unsigned r) {
  cfg.validate();
  if (cfg.nmax > kMaxExactWeighted) throw CapacityExceeded("sandwich runs in exact mode, nmax <= 1e5");
  const auto table = primes_for_squares(cfg.nmax);
  const SandwichWeights weights = sandwich_weights(cfg.window, delta, r, cfg.eta, table->primes());
  std::vector<std::uint32_t> members;
  for (const auto& [p, w] : weights.w0) {
    if (sgn(w) > 0) members.push_back(p);
  }
  const RepCountTable exact = count_range(cfg.nmax, members);
  const auto lower = weighted_count_range_exact(cfg.nmax, DyadicWeights::round_down(weights.w1, kSandwichScaleBits));
  const auto upper = weighted_count_range_exact(cfg.nmax, DyadicWeights::round_up(weights.w2, kSandwichScaleBits));

  SandwichResult result;
  const unsigned shift = 5 * kSandwichScaleBits;
  const double scale = std::ldexp(1.0, -static_cast<int>(shift));
  for (std::uint64_t n = 1; n <= cfg.nmax; ++n) {
    const kernels::u128 j_scaled = static_cast<kernels::u128>(exact.counts[n]) << shift;
    ++result.checked;
    if (lower.scaled[n] > j_scaled || j_scaled > upper.scaled[n]) ++result.violations;
    const double width = static_cast<double>(upper.scaled[n] - std::min(upper.scaled[n], lower.scaled[n])) * scale;
    result.gap = std::max(result.gap, width / std::max<double>(static_cast<double>(exact.counts[n]), 1.0));
  }
  for (const auto n : cfg.retained_ns()) {
    result.rows.push_back({n, static_cast<double>(lower.scaled[n]) * scale, exact.counts[n],
                           static_cast<double>(upper.scaled[n]) * scale});
  }
  return result;
}

GrowthResult run_growth_check(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto table = primes_for_squares(cfg.nmax);
  const RepCountTable all = count_range(cfg.nmax, table->primes());
  auto normalized = [](std::uint64_t n, std::uint64_t i) {
    const double nd = static_cast<double>(n);
    return static_cast<double>(i) * std::pow(std::log(nd), 5) / std::pow(nd, 1.5);
  };
  GrowthResult result;
  const std::uint64_t decade_lo = std::max(cfg.nmin, cfg.nmax / 10);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  double clo = std::numeric_limits<double>::infinity(), chi = 0.0;
  for (std::uint64_t n = cfg.nmin; n <= cfg.nmax; ++n) {
    const std::uint64_t i = all.at(n);
    const bool retained = !cfg.residue || cfg.residue->matches(n);
    const double v = normalized(n, i);
    if (retained) {
      result.rows.push_back({n, i, v});
      if (i == 0) ++result.zeros;
      if (n >= decade_lo) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    } else if (n >= decade_lo) {
      if (i == 0) {
        ++result.control_zeros;
      } else {
        clo = std::min(clo, v);
        chi = std::max(chi, v);
      }
    }
  }
  result.spread = lo > 0.0 && std::isfinite(lo) ? hi / lo : std::numeric_limits<double>::infinity();
  result.control_spread = clo > 0.0 && std::isfinite(clo) ? chi / clo : std::numeric_limits<double>::infinity();
  return result;
}

Report to_report(const VerifyResult& result) {
  Report report{{"N", "I", "J", "sigma", "naive", "ratio", "abs_err_sigma", "abs_err_naive"}, {}};
  report.rows.reserve(result.rows.size());
  for (const auto& row : result.rows) {
    report.rows.push_back({static_cast<std::int64_t>(row.n), static_cast<std::int64_t>(row.i),
                           static_cast<std::int64_t>(row.j), row.sigma, row.naive,
                           row.ratio ? Cell{*row.ratio} : Cell{std::monostate{}}, row.abs_err_sigma,
                           row.abs_err_naive});
  }
  return report;
}

Report to_report(const SandwichResult& result) {
  Report report{{"N", "J1", "J", "J2"}, {}};
  for (const auto& row : result.rows) {
    report.rows.push_back({static_cast<std::int64_t>(row.n), row.j1, static_cast<std::int64_t>(row.j), row.j2});
  }
  return report;
}

Report to_report(const GrowthResult& result) {
  Report report{{"N", "I", "normalized"}, {}};
  for (const auto& row : result.rows) {
    report.rows.push_back({static_cast<std::int64_t>(row.n), static_cast<std::int64_t>(row.i), row.normalized});
  }
  return report;
}

std::string describe(const VerifySummary& s) {
  std::ostringstream out;
  out.precision(6);
  out << "rows=" << s.rows << " used=" << s.used << " rmse_sigma=" << s.rmse_sigma << " rmse_naive=" << s.rmse_naive
      << " corr=" << s.correlation << " median_dev_sigma=" << s.median_rel_dev_sigma
      << " median_dev_naive=" << s.median_rel_dev_naive << " mean_sigma=" << s.mean_sigma;
  return out.str();
}

}  // namespace fivesq
