#include "tspec/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tspec/error.hpp"
#include "tspec/quadrature.hpp"
#include "tspec/special.hpp"

namespace tspec {

cplx h_const(const FourierSeries& log_a) { return log_a[0]; }

cplx e_const_sum(const FourierSeries& log_a) {
  cplx sum{0.0, 0.0};
  const int kmax = std::max(log_a.k_max(), -log_a.k_min());
  for (int k = 1; k <= kmax; ++k) sum += static_cast<double>(k) * log_a[k] * log_a[-k];
  return sum;
}

cplx e_const_integral(std::span<const cplx> log_a_samples) {
  const std::size_t n = log_a_samples.size();
  if (!is_power_of_two(n) || n < 8) throw ConfigError("e_const_integral: grid size must be a power of two >= 8");
  const int half = static_cast<int>(n / 2);
  const FourierSeries c = coefficients_from_samples(log_a_samples, -half + 1, half - 1);

  double total = 0.0;
  double tail = 0.0;
  for (int k = c.k_min(); k <= c.k_max(); ++k) {
    const double a = std::norm(c[k]);
    total += a;
    if (std::abs(k) > 3 * half / 4) tail += a;
  }
  if (total > 0.0 && std::sqrt(tail / total) > 1e-10) {
    throw NumericalError("e_const_integral: grid too coarse, spectral tail " + std::to_string(std::sqrt(tail / total)));
  }

  // [(f^H)_p]_k = |k| f_k.
  std::vector<cplx> dcoef(c.coefficients().begin(), c.coefficients().end());
  for (int k = c.k_min(); k <= c.k_max(); ++k) dcoef[static_cast<std::size_t>(k - c.k_min())] *= std::abs(k);
  const std::vector<cplx> d = samples_on_grid(FourierSeries(c.k_min(), std::move(dcoef)), n);
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < n; ++j) acc += d[j] * log_a_samples[j];
  return acc / (2.0 * static_cast<double>(n));
}

SzegoConstants szego_constants(const FourierSeries& log_a, std::size_t n_grid) {
  const std::vector<cplx> samples = samples_on_grid(log_a, n_grid);
  return {h_const(log_a), e_const_sum(log_a), e_const_integral(samples)};
}

namespace {

cplx alternating_bracket(const FourierSeries& g, cplx beta) {
  cplx sum{0.0, 0.0};
  const int kmax = std::max(g.k_max(), -g.k_min());
  for (int k = 1; k <= kmax; ++k) sum += (k % 2 == 0 ? 1.0 : -1.0) * (g[k] - g[-k]);
  return beta * sum;
}

cplx barnes_pair(cplx beta) { return ln_barnes_g(1.0 + beta) + ln_barnes_g(1.0 - beta); }

// Coefficients of a periodic function sampled on uniform_grid(n), |k| < n/2.
FourierSeries grid_coefficients(const std::vector<cplx>& samples) {
  const int half = static_cast<int>(samples.size() / 2);
  return coefficients_from_samples(samples, -half + 1, half - 1);
}

}  // namespace

cplx e0beta_from_log(const FourierSeries& log_b, cplx beta) {
  return e_const_sum(log_b) + alternating_bracket(log_b, beta) + barnes_pair(beta);
}

cplx e0beta(const SymbolSpec& s, std::size_t n_grid) {
  if (!is_power_of_two(n_grid) || n_grid < 16) throw ConfigError("e0beta: n_grid must be a power of two >= 16");
  if (const auto* c = std::get_if<Composite>(&s); c && c->modulus && c->modulus->alpha != cplx{0.0, 0.0}) {
    throw ConfigError("e0beta: modulus factor must have alpha = 0");
  }
  const cplx beta = jump_exponent(s);
  if (beta != cplx{0.0, 0.0}) require_single_jump_at_pi(s);

  // b = a / phi_beta: the smooth part.
  FourierSeries smooth = FourierSeries::constant(1.0);
  if (const auto* f = std::get_if<FourierSymbol>(&s)) smooth = f->coeffs;
  if (const auto* c = std::get_if<Composite>(&s)) smooth = c->smooth;

  std::vector<cplx> closed(n_grid + 1);
  for (std::size_t j = 0; j <= n_grid; ++j) {
    const double p = -pi + two_pi * static_cast<double>(j) / static_cast<double>(n_grid);
    closed[j] = smooth.evaluate(j == n_grid ? pi : p);
  }
  const std::vector<cplx> logs = continuous_log(closed);
  const double wind = (logs.back().imag() - logs.front().imag()) / two_pi;
  if (std::abs(wind) > 1e-6) throw ConfigError("e0beta: smooth part has nonzero winding " + std::to_string(wind));
  const std::vector<cplx> periodic(logs.begin(), logs.end() - 1);
  return e0beta_from_log(grid_coefficients(periodic), beta);
}

FHPrediction fh_logdet_prediction(const SymbolSpec& s, cplx zeta, std::size_t n, std::size_t n_grid) {
  if (n == 0) throw ConfigError("fh_logdet_prediction: n must be positive");
  if (!is_power_of_two(n_grid) || n_grid < 16) {
    throw ConfigError("fh_logdet_prediction: n_grid must be a power of two >= 16");
  }
  std::vector<cplx> c(n_grid + 1);
  double scale = 0.0;
  for (std::size_t j = 0; j <= n_grid; ++j) {
    const double p = j == n_grid ? pi : -pi + two_pi * static_cast<double>(j) / static_cast<double>(n_grid);
    const cplx a = evaluate_on_cut(s, p);
    scale = std::max(scale, std::abs(a));
    c[j] = zeta - a;
  }
  scale = std::max(scale, std::abs(zeta));
  for (std::size_t j = 0; j <= n_grid; ++j) {
    if (std::abs(c[j]) < 1e-8 * scale) {
      const double p = -pi + two_pi * static_cast<double>(j) / static_cast<double>(n_grid);
      throw NearZeroError("zeta lies on or too near the image of the symbol (p = " + std::to_string(p) + ")", p);
    }
  }
  const std::vector<cplx> logs = continuous_log(c);
  const cplx beta_zeta = (logs.back() - logs.front()) / (two_pi * imag_unit);

  std::vector<cplx> g(n_grid);
  for (std::size_t j = 0; j < n_grid; ++j) {
    const double p = -pi + two_pi * static_cast<double>(j) / static_cast<double>(n_grid);
    g[j] = logs[j] - imag_unit * beta_zeta * p;
  }
  const FourierSeries gc = grid_coefficients(g);

  FHPrediction out;
  out.n = n;
  out.beta_zeta = beta_zeta;
  out.H = gc[0];
  const double nd = static_cast<double>(n);
  out.nH = nd * out.H;
  out.log_n_term = -beta_zeta * beta_zeta * std::log(nd);
  out.constant = e0beta_from_log(gc, beta_zeta);
  out.log_det_pred = out.nH + out.log_n_term + out.constant;
  return out;
}

double jump_identity_residual(const FourierSeries& log_b, cplx beta, std::size_t panels) {
  if (panels == 0) throw ConfigError("jump_identity_residual: need at least one panel");
  const FourierSeries gh_deriv = [&] {
    std::vector<cplx> d(log_b.coefficients().begin(), log_b.coefficients().end());
    for (int k = log_b.k_min(); k <= log_b.k_max(); ++k) d[static_cast<std::size_t>(k - log_b.k_min())] *= std::abs(k);
    return FourierSeries(log_b.k_min(), std::move(d));
  }();
  std::vector<double> bp(panels + 1);
  for (std::size_t i = 0; i <= panels; ++i) bp[i] = -pi + two_pi * static_cast<double>(i) / static_cast<double>(panels);
  bp.back() = pi;
  const QuadratureRule rule = composite_rule(bp, 20);

  cplx lhs{0.0, 0.0};
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double p = rule.nodes[q];
    const cplx term = imag_unit * beta * std::tan(0.5 * p) * log_b.difference(p, pi) +
                      gh_deriv.evaluate(p) * imag_unit * beta * p;
    lhs += rule.weights[q] * term;
  }
  lhs /= 4.0 * pi;
  const cplx rhs = alternating_bracket(log_b, beta);
  return std::abs(lhs - rhs);
}

}  // namespace tspec
