// fivesq: command line front end for the special-prime five-squares experiments.

#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <string>

#include "fivesq/counting.hpp"
#include "fivesq/error.hpp"
#include "fivesq/expsum.hpp"
#include "fivesq/harness.hpp"
#include "fivesq/primes.hpp"
#include "fivesq/report.hpp"
#include "fivesq/sigma.hpp"

namespace {

using namespace fivesq;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCheckFailed = 2;

struct GlobalOptions {
  std::string eta = "0,2,1";
  std::string window = "1/10,3/5";
  std::uint64_t nmin = 1;
  std::uint64_t nmax = 100'000;
  std::string mod = "5:24";
  double tol = 1e-10;
  std::string out = "-";
  std::string format = "csv";
  std::uint64_t seed = 1;
  int threads = 0;
  int exponent = 2;
};

ExperimentConfig make_config(const GlobalOptions& g) {
  ExperimentConfig cfg;
  cfg.eta = QuadraticIrrational::parse(g.eta);
  cfg.window = Window::parse(g.window);
  cfg.nmin = g.nmin;
  cfg.nmax = g.nmax;
  if (g.mod == "none") {
    cfg.residue.reset();
  } else {
    const auto colon = g.mod.find(':');
    if (colon == std::string::npos) throw InvalidArgument("--mod expects r:m or none");
    cfg.residue = Residue{std::stoull(g.mod.substr(0, colon)), std::stoull(g.mod.substr(colon + 1))};
  }
  cfg.tol = g.tol;
  cfg.output = g.out;
  cfg.format = parse_format(g.format);
  cfg.seed = g.seed;
  if (g.exponent != 1 && g.exponent != 2) throw InvalidArgument("--exponent must be 1 or 2");
  cfg.exponent = g.exponent == 1 ? Exponent::Linear : Exponent::Square;
  cfg.validate();
  return cfg;
}

std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sums of five squares of special primes: counts, sigma, and checks"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--eta", g.eta, "quadratic irrational as P,D,Q meaning (P+sqrt(D))/Q");
  app.add_option("--window", g.window, "window a_num/a_den,b_num/b_den");
  app.add_option("--nmin", g.nmin, "smallest N reported");
  app.add_option("--nmax", g.nmax, "largest N (also the sieve/table bound)");
  app.add_option("--mod", g.mod, "keep N = r mod m, as r:m, or 'none'");
  app.add_option("--tol", g.tol, "sigma truncation tolerance");
  app.add_option("--out", g.out, "output path, '-' for stdout");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", g.seed, "seed for sampled scans");
  app.add_option("--threads", g.threads, "OpenMP threads (0 = runtime default)");
  app.add_option("--exponent", g.exponent, "1 filters by {eta p}, 2 by {eta p^2}");

  auto* sieve_cmd = app.add_subcommand("sieve", "sieve primes up to --limit and report the count");
  std::uint64_t limit = 0;
  sieve_cmd->add_option("--limit", limit, "sieve bound (default sqrt(nmax))");

  auto* special_cmd = app.add_subcommand("special", "filter primes by the window; dump members to --out");
  special_cmd->add_option("--limit", limit, "prime bound (default sqrt(nmax))");

  auto* count_cmd = app.add_subcommand("count", "representation counts N = p1^2 + ... + p5^2");
  bool count_special = false;
  std::string binary_path;
  count_cmd->add_flag("--special", count_special, "count over the special primes only");
  count_cmd->add_option("--binary", binary_path, "also write a little-endian 64-bit table dump");

  auto* sigma_cmd = app.add_subcommand("sigma", "sigma(N, a, b) for the retained N");
  auto* verify_cmd = app.add_subcommand("verify", "compare J with I*sigma and I*(b-a)^5");
  auto* linear_cmd = app.add_subcommand("linear-remark", "same comparison with the {eta p} filter");

  auto* sandwich_cmd = app.add_subcommand("sandwich", "exact J1 <= J <= J2 check with smoothed windows");
  std::string delta_text = "1/20";
  unsigned order = 5;
  sandwich_cmd->add_option("--delta", delta_text, "smoothing width as a rational");
  sandwich_cmd->add_option("--r", order, "smoothing order");
  bool asymptotic = false;
  sandwich_cmd->add_flag("--asymptotic", asymptotic, "use r = floor(ln nmax) and delta = nmax^-0.01");

  auto* growth_cmd = app.add_subcommand("growth", "I(N) log^5 N / N^1.5 over the retained N");

  auto* scan_cmd = app.add_subcommand("expsum-scan", "sample |S(t)| at N = --nmax and label arcs");
  std::uint64_t samples = 1000;
  double eps = kDefaultArcEpsilon;
  scan_cmd->add_option("--samples", samples, "number of sampled t");
  scan_cmd->add_option("--eps", eps, "arc exponent: tau = N^(1-eps), threshold = N^eps");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (g.threads > 0) omp_set_num_threads(g.threads);

    if (sieve_cmd->parsed()) {
      const std::uint64_t bound = limit ? limit : std::max<std::uint64_t>(isqrt_u64(g.nmax), 2);
      const PrimeTable table = sieve(bound);
      Report report{{"limit", "count", "largest"},
                    {{static_cast<std::int64_t>(bound), static_cast<std::int64_t>(table.count()),
                      static_cast<std::int64_t>(table.primes().empty() ? 0 : table.primes().back())}}};
      emit_report(report, parse_format(g.format), g.out);
      return kExitOk;
    }

    const ExperimentConfig cfg = make_config(g);

    if (special_cmd->parsed()) {
      const std::uint64_t bound = limit ? limit : std::max<std::uint64_t>(isqrt_u64(cfg.nmax), 2);
      const auto table = std::make_shared<const PrimeTable>(sieve(bound));
      const SpecialPrimeSet set = special_primes(table, cfg.eta, cfg.window, cfg.exponent);
      if (g.out == "-") {
        for (const auto p : set.members) std::cout << p << '\n';
      } else {
        dump_members(set, g.out);
      }
      std::cerr << "members=" << set.members.size() << " pi(limit)=" << table->count()
                << " density=" << density_estimate(set) << " window_length=" << cfg.window.length_double() << '\n';
      return kExitOk;
    }

    if (count_cmd->parsed()) {
      const auto table = std::make_shared<const PrimeTable>(sieve(std::max<std::uint64_t>(isqrt_u64(cfg.nmax), 2)));
      std::vector<std::uint32_t> allowed = table->primes();
      if (count_special) allowed = special_primes(table, cfg.eta, cfg.window, cfg.exponent).members;
      const RepCountTable counts = count_range(cfg.nmax, allowed);
      if (!binary_path.empty()) save_counts_binary(counts, binary_path);
      Report report{{"N", "count"}, {}};
      for (const auto n : cfg.retained_ns()) {
        report.rows.push_back({static_cast<std::int64_t>(n), static_cast<std::int64_t>(counts.at(n))});
      }
      emit_report(report, cfg.format, cfg.output);
      return kExitOk;
    }

    if (sigma_cmd->parsed()) {
      const auto profile = sigma_profile(cfg.eta, cfg.window, cfg.retained_ns(), cfg.tol);
      Report report{{"N", "theta", "sigma", "tail_bound"}, {}};
      for (const auto& [n, ev] : profile) {
        report.rows.push_back({static_cast<std::int64_t>(n), ev.theta.to_double(), ev.value, ev.tail_bound});
      }
      emit_report(report, cfg.format, cfg.output);
      return kExitOk;
    }

    if (verify_cmd->parsed() || linear_cmd->parsed()) {
      ExperimentConfig run = cfg;
      run.exponent = verify_cmd->parsed() ? Exponent::Square : Exponent::Linear;
      const VerifyResult result = verify_cmd->parsed() ? run_verify(run) : run_linear_remark(run);
      emit_report(to_report(result), run.format, run.output);
      std::cerr << describe(result.summary) << '\n';
      return kExitOk;
    }

    if (sandwich_cmd->parsed()) {
      Rational delta = parse_rational(delta_text);
      if (asymptotic) {
        const double n = static_cast<double>(cfg.nmax);
        order = static_cast<unsigned>(std::floor(std::log(n)));
        delta = Rational(std::pow(n, -0.01));
      }
      const SandwichResult result = run_sandwich(cfg, delta, order);
      emit_report(to_report(result), cfg.format, cfg.output);
      std::cerr << "checked=" << result.checked << " violations=" << result.violations << " gap=" << result.gap
                << '\n';
      return result.passed() ? kExitOk : kExitCheckFailed;
    }

    if (growth_cmd->parsed()) {
      const GrowthResult result = run_growth_check(cfg);
      emit_report(to_report(result), cfg.format, cfg.output);
      std::cerr << "rows=" << result.rows.size() << " zeros=" << result.zeros << " spread=" << result.spread
                << " control_zeros=" << result.control_zeros << " control_spread=" << result.control_spread << '\n';
      return kExitOk;
    }

    if (scan_cmd->parsed()) {
      const auto rows = minor_arc_scan(cfg.nmax, samples, cfg.seed, eps);
      Report report{{"t", "d", "q", "kind", "abs_S", "normalized"}, {}};
      for (const auto& row : rows) {
        report.rows.push_back({row.t, static_cast<std::int64_t>(row.d.get_si()), static_cast<std::int64_t>(row.q.get_si()), to_string(row.kind), row.abs_s,
                               row.normalized});
      }
      emit_report(report, cfg.format, cfg.output);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
