// Acceptance checks. `acceptance <name>` runs one criterion, `acceptance` runs all of them.
// Each prints one line: PASS|FAIL <name>: <measured values>. Exit status 0 iff all ran criteria pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "tspec/asymptotics.hpp"
#include "tspec/deviation.hpp"
#include "tspec/eig.hpp"
#include "tspec/error.hpp"
#include "tspec/harness.hpp"
#include "tspec/special.hpp"
#include "tspec/toeplitz.hpp"

using namespace tspec;

namespace {

// Pinned tolerances.
constexpr double kMinImprovement = 5.0;
constexpr double kMaxPipelineSeconds = 120.0;
constexpr double kScalingFitRelTol = 0.10;
constexpr double kDetSlopeRelTol = 0.02;
constexpr double kSzegoTol = 1e-6;
constexpr double kBetaInvariantTol = 1e-8;
constexpr double kJumpIdentityTol = 1e-8;
constexpr double kEConstTol = 1e-10;
constexpr double kBarnesRecurrenceTol = 1e-10;
constexpr double kHilbertTol = 1e-15;
constexpr double kTridiagonalTol = 1e-9;
constexpr double kCharPolyTol = 1e-8;
constexpr double kTraceRelTol = 1e-9;
constexpr double kLogDetTol = 1e-8;
constexpr double kEndpointRatioTol = 0.15;

const cplx I{0.0, 1.0};
const cplx kBeta{0.8, 1.0 / 3.0};

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string fmt_c(cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome deviation_improvement() {
  ExperimentConfig cfg;
  cfg.symbol = PureJump{kBeta, 0.0};
  cfg.quad_points = 8192;
  cfg.n_list = {200};
  const auto r200 = run_compare(cfg);
  cfg.n_list = {400};
  const auto t0 = std::chrono::steady_clock::now();
  const auto r400 = run_compare(cfg);
  const double secs = seconds_since(t0);
  const double f200 = r200.summaries[0].improvement_factor;
  const double f400 = r400.summaries[0].improvement_factor;
  const bool pass = f200 >= kMinImprovement && f400 > f200 && secs < kMaxPipelineSeconds;
  return {pass, "improvement n=200 " + fmt("%.3f", f200) + " (>= 5), n=400 " + fmt("%.3f", f400) +
                    " (must increase), n=400 pipeline " + fmt("%.1f", secs) + " s (< 120)"};
}

// Normalized deviation (lambda - a) / (i a') at theta = 0, from the average of theta_j = +-pi/n.
cplx normalized_deviation_at_zero(const SymbolSpec& s, std::size_t n) {
  const int k = static_cast<int>(n) - 1;
  const auto t = build(fourier_coeffs(s, -k, k, 16384), n);
  const auto m = match_to_grid(eigenvalues(t.entries), s, n);
  cplx sum = 0.0;
  for (std::size_t j : {n / 2 - 1, n / 2}) {
    const auto& [theta, lambda] = m.pairs[j];
    sum += (lambda - evaluate(s, theta)) / (I * derivative_on_cut(s, theta));
  }
  return 0.5 * sum;
}

Outcome scaling_fit() {
  const PureJump s{0.5, 0.0};
  const std::vector<std::size_t> ns{200, 400, 800, 1600};
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(ns.size()), 2);
  Eigen::VectorXcd y(static_cast<Eigen::Index>(ns.size()));
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double n = static_cast<double>(ns[i]);
    const auto idx = static_cast<Eigen::Index>(i);
    a(idx, 0) = std::log(n) / n;
    a(idx, 1) = 1.0 / n;
    y(idx) = normalized_deviation_at_zero(s, ns[i]);
  }
  const Eigen::VectorXcd c = a.colPivHouseholderQr().solve(y);
  // In units of i a'(0) the predicted log n / n coefficient is -dbeta2(0).
  const cplx expected = -f_continuous(s, 0.0).delta_beta_sq;
  const double rel = std::abs(c(0) - expected) / std::abs(expected);
  return {rel <= kScalingFitRelTol, "fitted log n/n coefficient " + fmt_c(c(0)) + " vs -dbeta2 " + fmt_c(expected) +
                                        ", relative error " + fmt("%.4f", rel) + " (<= 0.10)"};
}

Outcome determinant_scaling() {
  ExperimentConfig cfg;
  cfg.symbol = PureJump{kBeta, 0.0};
  cfg.zeta = 2.0;
  cfg.n_list = {64, 128, 256, 512};
  cfg.quad_points = 8192;
  const auto r = run_det_validation(cfg);
  const cplx expected = -r.beta_zeta * r.beta_zeta;
  const double rel = std::abs(r.fitted_log_n_coefficient - expected) / std::abs(expected);
  return {rel <= kDetSlopeRelTol, "fitted log n coefficient " + fmt_c(r.fitted_log_n_coefficient) +
                                      " vs -beta_zeta^2 " + fmt_c(expected) + ", relative error " + fmt("%.4f", rel) +
                                      " (<= 0.02)"};
}

Outcome szego_limit() {
  // a = exp(0.3 (t + 1/t)) has coefficients I_k(0.6); H = 0, E = 0.09.
  const std::size_t n = 64;
  std::map<int, cplx> c;
  for (int k = -static_cast<int>(n); k <= static_cast<int>(n); ++k) c[k] = std::cyl_bessel_i(std::abs(k), 0.6);
  const cplx ld = log_det(build(FourierSeries(c), n));
  const double err = std::abs(ld - 0.09);
  return {err <= kSzegoTol, "|log det T_64 - 0.09| = " + fmt("%.3e", err) + " (<= 1e-6)"};
}

Outcome invariant_suites() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  double beta_err = 0.0;
  for (int i = 0; i < 50; ++i) {
    const cplx beta{0.05 + 0.9 * u(rng), -0.6 + 1.2 * u(rng)};
    const double theta = -3.0 + 6.0 * u(rng);
    const auto jd = f_continuous(PureJump{beta, 0.0}, theta);
    beta_err = std::max({beta_err, std::abs(jd.beta_plus - jd.beta_minus + 1.0),
                         std::abs(2.0 * jd.beta_plus + jd.delta_beta_sq + 1.0),
                         std::abs(2.0 * jd.beta_minus + jd.delta_beta_sq - 1.0)});
  }

  std::normal_distribution<double> g(0.0, 0.3);
  auto random_band = [&](int support) {
    std::map<int, cplx> m;
    for (int k = -support; k <= support; ++k) m[k] = {g(rng), g(rng)};
    return FourierSeries(m);
  };
  double identity = 0.0;
  for (int i = 0; i < 100; ++i) {
    const cplx beta{-0.5 + u(rng), -0.5 + u(rng)};
    identity = std::max(identity, jump_identity_residual(random_band(6), beta));
  }

  double econst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto f = random_band(8);
    econst = std::max(econst, std::abs(e_const_integral(samples_on_grid(f, 64)) - e_const_sum(f)));
  }

  double barnes = 0.0;
  for (double re = 0.25; re <= 4.0; re += 0.25) {
    for (double im = -4.0; im <= 4.0; im += 0.25) {
      const cplx w{re, im};
      if (std::abs(w) > 4.0) continue;
      const cplx d = ln_barnes_g(w + 1.0) - ln_barnes_g(w) - oracle::gsl_lngamma(w);
      barnes = std::max(barnes, std::abs(cplx{d.real(), oracle::wrap_pi(d.imag())}));
    }
  }

  double hilbert = 0.0;
  for (int j = -5; j <= 5; ++j) {
    const auto h = hilbert_transform(FourierSeries(std::map<int, cplx>{{j, 1.0}}));
    const cplx expected = j >= 0 ? -I : I;
    hilbert = std::max(hilbert, std::abs(h[j] - expected));
    for (double p : {-2.0, 0.3, 1.7}) {
      hilbert = std::max(hilbert, std::abs(hilbert_value(FourierSeries(std::map<int, cplx>{{j, 1.0}}), p) -
                                           expected * std::exp(I * (static_cast<double>(j) * p))));
    }
  }

  const bool pass = beta_err <= kBetaInvariantTol && identity <= kJumpIdentityTol && econst <= kEConstTol &&
                    barnes <= kBarnesRecurrenceTol && hilbert <= kHilbertTol;
  return {pass, "beta+- " + fmt("%.2e", beta_err) + " (<= 1e-8), jump identity " + fmt("%.2e", identity) +
                    " (<= 1e-8), E sum vs integral " + fmt("%.2e", econst) + " (<= 1e-10), Barnes G recurrence " +
                    fmt("%.2e", barnes) + " (<= 1e-10), Hilbert table " + fmt("%.2e", hilbert) + " (<= 1e-15)"};
}

Outcome eigensolver_oracles() {
  double tri = 0.0;
  for (std::size_t n = 5; n <= 64; ++n) {
    const auto t = build(FourierSeries(std::map<int, cplx>{{-1, 1.0}, {1, 1.0}}), n);
    std::vector<cplx> exact(n);
    for (std::size_t j = 1; j <= n; ++j) exact[j - 1] = 2.0 * std::cos(static_cast<double>(j) * pi / static_cast<double>(n + 1));
    tri = std::max(tri, oracle::multiset_distance(eigenvalues(t.entries).eigenvalues, exact));
  }

  std::mt19937_64 rng(77);
  std::normal_distribution<double> g;
  auto random_matrix = [&](Eigen::Index n) {
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i) a(i, j) = {g(rng), g(rng)};
    return a;
  };
  double cp = 0.0;
  for (Eigen::Index n = 1; n <= 10; ++n) {
    const auto a = random_matrix(n);
    cp = std::max(cp, oracle::multiset_distance(eigenvalues(a).eigenvalues, oracle::poly_roots(oracle::char_poly(a))));
  }

  double trace = 0.0;
  double det = 0.0;
  for (Eigen::Index n = 1; n <= 64; ++n) {
    const auto a = random_matrix(n);
    const auto spec = eigenvalues(a);
    cplx tr = 0.0;
    cplx logs = 0.0;
    for (cplx l : spec.eigenvalues) {
      tr += l;
      logs += std::log(l);
    }
    trace = std::max(trace, std::abs(tr - a.trace()) / a.norm());
    const cplx d = log_det(a) - logs;
    det = std::max(det, std::abs(cplx{d.real(), oracle::wrap_pi(d.imag())}));
  }

  const bool pass = tri <= kTridiagonalTol && cp <= kCharPolyTol && trace <= kTraceRelTol && det <= kLogDetTol;
  return {pass, "tridiagonal " + fmt("%.2e", tri) + " (<= 1e-9), char poly " + fmt("%.2e", cp) +
                    " (<= 1e-8), trace " + fmt("%.2e", trace) + " (<= 1e-9 rel), log det " + fmt("%.2e", det) +
                    " (<= 1e-8)"};
}

Outcome endpoint_divergence() {
  const double beta = 0.5;
  const std::size_t n = 10000;
  const double theta = pi - 1e-4;
  const PureJump s{beta, 0.0};
  const auto p = predict_deviation(s, theta, n);
  const cplx ratio = p.delta_a / evaluate(s, theta) / endpoint_asymptotic(beta, theta, n);
  const double dev = std::abs(ratio - 1.0);
  return {dev <= kEndpointRatioTol, "ratio (delta_a/a) / endpoint formula = " + fmt_c(ratio) + ", |ratio - 1| = " +
                                        fmt("%.3e", dev) + " (<= 0.15)"};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> list{
      {"deviation_improvement", deviation_improvement},
      {"scaling_fit", scaling_fit},
      {"determinant_scaling", determinant_scaling},
      {"szego_limit", szego_limit},
      {"invariant_suites", invariant_suites},
      {"eigensolver_oracles", eigensolver_oracles},
      {"endpoint_divergence", endpoint_divergence},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  bool all_pass = true;
  bool matched = false;
  for (const auto& [name, fn] : criteria()) {
    if (argc > 1 && name != argv[1]) continue;
    matched = true;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  if (!matched) {
    std::fprintf(stderr, "unknown criterion '%s'\n", argv[1]);
    return 2;
  }
  return all_pass ? 0 : 1;
}
