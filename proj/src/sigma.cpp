#include "fivesq/sigma.hpp"

#include <cmath>
#include <exception>
#include <numbers>

#include "fivesq/error.hpp"

namespace fivesq {
namespace {

constexpr double kPi = std::numbers::pi;

Rational center_rational(const Window& w) {
  Rational c = Rational(5, 2) * (w.a() + w.b());
  c -= Rational(floor(c));
  return c;
}

SigmaEvaluation evaluate(const SigmaSeries& series, const QuadraticIrrational& eta, std::uint64_t n,
                         const Rational& center) {
  SigmaEvaluation ev;
  ev.theta = frac_part(eta, n, kSigmaArgumentBits);
  ev.phase = ev.theta.add_rational(-center).frac();
  if (ev.phase.err_bits() < kSigmaArgumentBits) {
    throw InsufficientPrecision("sigma argument carries fewer than 96 certified bits");
  }
  ev.m_cut = series.m_cut();
  ev.tail_bound = series.tail_bound();
  ev.value = series.at_phase(ev.phase.to_double(), &ev.imag_residue);
  if (std::abs(ev.imag_residue) > 1e-12) {
    throw AuditFailure("sigma series left an imaginary residue of " + std::to_string(ev.imag_residue));
  }
  return ev;
}

}  // namespace

std::uint64_t sigma_truncation(double tol) {
  if (!(tol >= 1e-12)) throw InvalidArgument("sigma tolerance must be at least 1e-12");
  const double pi5 = std::pow(kPi, 5);
  auto m = static_cast<std::uint64_t>(std::ceil(std::pow(1.0 / (2.0 * pi5 * tol), 0.25)));
  m = std::max<std::uint64_t>(m, 1);
  while (1.0 / (2.0 * pi5 * std::pow(static_cast<double>(m), 4)) > tol) ++m;
  return m;
}

SigmaSeries::SigmaSeries(const Window& w, double tol) {
  const std::uint64_t m_cut = sigma_truncation(tol);
  const double len = w.length_double();
  coeff_.resize(m_cut + 1);
  coeff_[0] = std::pow(len, 5);
  for (std::uint64_t m = 1; m <= m_cut; ++m) {
    const double x = kPi * static_cast<double>(m);
    const double ratio = std::sin(x * len) / x;
    coeff_[m] = std::pow(ratio, 5);
  }
  const double pi5 = std::pow(kPi, 5);
  // Truncation tail plus a rounding allowance for the partial sum.
  tail_bound_ = 1.0 / (2.0 * pi5 * std::pow(static_cast<double>(m_cut), 4)) +
                static_cast<double>(2 * m_cut + 1) * std::ldexp(1.0, -50);
  center_ = center_rational(w).get_d();
}

double SigmaSeries::at_phase(double phase, double* imag_residue) const {
  double re = coeff_[0];
  double im = 0.0;
  for (std::size_t m = 1; m < coeff_.size(); ++m) {
    const double angle = 2.0 * kPi * static_cast<double>(m) * phase;
    const double c = coeff_[m];
    // m and -m separately, so the imaginary parts cancel only if they should
    re += c * std::cos(angle) + c * std::cos(-angle);
    im += c * std::sin(angle) + c * std::sin(-angle);
  }
  if (imag_residue) *imag_residue = im;
  return re;
}

double SigmaSeries::at_theta(double theta) const {
  double phase = theta - center_;
  phase -= std::floor(phase);
  return at_phase(phase);
}

SigmaEvaluation sigma_series(const QuadraticIrrational& eta, std::uint64_t n, const Window& w, double tol) {
  const SigmaSeries series(w, tol);
  return evaluate(series, eta, n, center_rational(w));
}

double irwin_hall5_density(double x) {
  if (x <= 0.0 || x >= 5.0) return 0.0;
  if (x > 2.5) x = 5.0 - x;  // symmetric; keeps the alternating sum short
  static constexpr double kBinom[6] = {1, 5, 10, 10, 5, 1};
  double sum = 0.0;
  for (int k = 0; k <= 5 && x > k; ++k) {
    const double t = x - k;
    sum += ((k & 1) ? -1.0 : 1.0) * kBinom[k] * t * t * t * t;
  }
  return sum / 24.0;
}

double sigma_oracle(double theta, const Window& w) {
  const double a = w.a_double();
  const double len = w.length_double();
  const double start = theta - 5.0 * a;
  const auto j_lo = static_cast<long long>(std::ceil(-start));
  const auto j_hi = static_cast<long long>(std::floor(5.0 * len - start));
  double sum = 0.0;
  for (long long j = j_lo; j <= j_hi; ++j) {
    sum += irwin_hall5_density((start + static_cast<double>(j)) / len);
  }
  return std::pow(len, 4) * sum;
}

std::vector<std::pair<std::uint64_t, SigmaEvaluation>> sigma_profile(const QuadraticIrrational& eta,
                                                                     const Window& w,
                                                                     const std::vector<std::uint64_t>& ns,
                                                                     double tol, Exec exec) {
  if (ns.empty()) throw InvalidArgument("sigma_profile needs at least one N");
  const SigmaSeries series(w, tol);
  const Rational center = center_rational(w);
  std::vector<std::pair<std::uint64_t, SigmaEvaluation>> out(ns.size());
  const std::int64_t count = static_cast<std::int64_t>(ns.size());
  std::exception_ptr failure;
#pragma omp parallel for if (exec == Exec::Parallel) schedule(dynamic, 64)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    try {
      out[ui] = {ns[ui], evaluate(series, eta, ns[ui], center)};
    } catch (...) {
#pragma omp critical(sigma_profile_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace fivesq
