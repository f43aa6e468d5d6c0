#include "tspec/deviation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tspec/error.hpp"
#include "tspec/quadrature.hpp"
#include "tspec/special.hpp"

namespace tspec {

namespace {

std::vector<double> closed_grid(std::size_t n_grid) {
  if (n_grid < 16) throw ConfigError("reference grid needs at least 16 points");
  std::vector<double> p(n_grid + 1);
  for (std::size_t j = 0; j < n_grid; ++j) p[j] = -pi + two_pi * static_cast<double>(j) / static_cast<double>(n_grid);
  p[n_grid] = pi;
  return p;
}

void check_theta(double theta) {
  if (!(theta > -pi && theta < pi)) throw ConfigError("theta must lie strictly inside (-pi, pi)");
}

double log_chord(double p, double theta) { return std::log(std::abs(2.0 * std::sin(0.5 * (p - theta)))); }

// (zeta - a(p)) / (2 sin((theta - p)/2)) with its limit a'(theta) at p = theta.
cplx regular_ratio(const SymbolSpec& s, double theta, double p) {
  if (p == theta) return derivative_on_cut(s, theta);
  return difference_on_cut(s, theta, p) / (2.0 * std::sin(0.5 * (theta - p)));
}

// Unwraps L along the union of the reference grid, theta and the requested points.
std::vector<cplx> sample_regular(const SymbolSpec& s, double theta, const std::vector<double>& reference,
                                 std::span<const double> points) {
  std::vector<double> merged(reference);
  merged.push_back(theta);
  merged.insert(merged.end(), points.begin(), points.end());
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

  std::vector<cplx> g(merged.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    g[i] = regular_ratio(s, theta, merged[i]);
    scale = std::max(scale, std::abs(g[i]));
  }
  for (std::size_t i = 0; i < merged.size(); ++i) {
    if (!(std::abs(g[i]) > 1e-12 * scale)) {
      throw NearZeroError("zeta - a(e^{ip}) vanishes away from p = theta at p = " + std::to_string(merged[i]) +
                              " (image self-intersection)",
                          merged[i]);
    }
  }
  const std::vector<cplx> logs = continuous_log(g);

  std::vector<cplx> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto it = std::lower_bound(merged.begin(), merged.end(), points[i]);
    out[i] = logs[static_cast<std::size_t>(it - merged.begin())];
  }
  return out;
}

void fill_betas(JumpData& jd) {
  const cplx jump = jd.F.back() - jd.F.front();
  jd.delta_beta_sq = imag_unit / pi * jump;
  jd.beta_plus = jump / (two_pi * imag_unit) - 0.5;
  jd.beta_minus = jd.beta_plus + 1.0;
}

}  // namespace

JumpData f_continuous(const SymbolSpec& s, double theta, std::size_t n_grid) {
  require_single_jump_at_pi(s);
  check_theta(theta);
  const std::vector<double> reference = closed_grid(n_grid);
  JumpData jd;
  jd.theta = theta;
  jd.p = reference;
  jd.log_kernel = true;
  jd.regular = [s, theta, reference](std::span<const double> pts) {
    return sample_regular(s, theta, reference, pts);
  };
  const std::vector<cplx> l = jd.regular(jd.p);
  jd.F.resize(l.size());
  for (std::size_t i = 0; i < l.size(); ++i) {
    jd.F[i] = jd.p[i] == theta ? cplx{-std::numeric_limits<double>::infinity(), l[i].imag()}
                               : l[i] + log_chord(jd.p[i], theta);
  }
  // The kernel takes equal values at +-pi, so the endpoint jump of F is that of L.
  const cplx jump = l.back() - l.front();
  jd.delta_beta_sq = imag_unit / pi * jump;
  jd.beta_plus = jump / (two_pi * imag_unit) - 0.5;
  jd.beta_minus = jd.beta_plus + 1.0;
  return jd;
}

JumpData make_jump_data(double theta, const std::function<cplx(double)>& f, std::size_t n_grid) {
  check_theta(theta);
  JumpData jd;
  jd.theta = theta;
  jd.p = closed_grid(n_grid);
  jd.log_kernel = false;
  jd.F.resize(jd.p.size());
  for (std::size_t i = 0; i < jd.p.size(); ++i) jd.F[i] = f(jd.p[i]);
  jd.regular = [f](std::span<const double> pts) {
    std::vector<cplx> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = f(pts[i]);
    return out;
  };
  fill_betas(jd);
  return jd;
}

cplx f_closed_form_pure(cplx beta, double theta, double p) {
  const double br = beta.real();
  const double bi = beta.imag();
  const double d = theta - p;
  const double den = std::cosh(0.5 * bi * d) * std::sin(0.5 * br * d);
  if (den == 0.0) {
    throw NumericalError("closed form: atan denominator vanishes at p = " + std::to_string(p));
  }
  // (cosh(bI d) - cos(bR d)) / 2 = |sin(beta d / 2)|^2, evaluated without the cancellation near d = 0.
  const double arg = std::norm(std::sin(0.5 * beta * d));
  if (!(arg > 0.0)) throw NumericalError("closed form: log argument vanishes at p = " + std::to_string(p));
  const double num = std::cos(0.5 * br * d) * std::sinh(0.5 * bi * d);
  return 0.5 * imag_unit * beta * (p + theta + pi) + std::log(2.0) + imag_unit * std::atan(num / den) +
         0.5 * std::log(arg);
}

cplx omega_gamma_term(cplx delta_beta_sq) {
  const cplx z1 = 0.5 + 0.5 * delta_beta_sq;
  const cplx z2 = 0.5 - 0.5 * delta_beta_sq;
  for (const cplx z : {z1, z2}) {
    if (std::abs(z.imag()) < 1e-12 && z.real() < 0.5 && std::abs(z.real() - std::round(z.real())) < 1e-12) {
      throw NumericalError("Gamma pole in Omega: delta_beta_sq is an odd integer");
    }
  }
  return log_gamma(z1) - log_gamma(z2);
}

namespace {

cplx omega_integrals(const JumpData& jd, const QuadratureConfig& quad, std::size_t m) {
  const double theta = jd.theta;
  // Panels narrower than ~1e-11 put nodes on top of theta or +-pi in floating point.
  const double floor_width = 1e-11;
  std::vector<double> bp = graded_breakpoints(
      -pi, theta, quad.grading_ratio, std::max(floor_width, quad.min_relative_width * (theta + pi)), quad.max_width);
  const std::vector<double> right = graded_breakpoints(
      theta, pi, quad.grading_ratio, std::max(floor_width, quad.min_relative_width * (pi - theta)), quad.max_width);
  bp.insert(bp.end(), right.begin() + 1, right.end());
  const QuadratureRule rule = composite_rule(bp, m);

  std::vector<double> pts = rule.nodes;
  pts.push_back(-pi);
  pts.push_back(theta);
  pts.push_back(pi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::vector<cplx> lv = jd.regular(pts);
  auto at = [&](double p) { return lv[static_cast<std::size_t>(std::lower_bound(pts.begin(), pts.end(), p) - pts.begin())]; };

  const cplx d = jd.delta_beta_sq;
  const cplx l_theta = at(theta);
  const cplx h_lo = -0.5 * d * pi - imag_unit * at(-pi);
  const cplx h_hi = 0.5 * d * pi - imag_unit * at(pi);

  cplx tan_part{0.0, 0.0};
  cplx cot_part{0.0, 0.0};
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double p = rule.nodes[q];
    const double w = rule.weights[q];
    const cplx l = at(p);
    const cplx h = 0.5 * d * p - imag_unit * l;
    tan_part += w * std::tan(0.5 * p) * (h - (p < 0.0 ? h_lo : h_hi));
    cot_part += w * (l - l_theta) / std::tan(0.5 * (p - theta));
  }
  cplx total = tan_part / two_pi - imag_unit * cot_part / two_pi;
  // tan-kernel integral of log|2 sin((p - theta)/2)| is -theta/2; the cot-kernel PV of it vanishes.
  if (jd.log_kernel) total += 0.5 * imag_unit * theta;
  return total;
}

}  // namespace

OmegaResult omega(const JumpData& jd, const QuadratureConfig& quad) {
  if (!jd.regular) throw ConfigError("omega: JumpData has no sampler");
  const cplx gamma = omega_gamma_term(jd.delta_beta_sq);
  const cplx coarse = omega_integrals(jd, quad, quad.nodes_per_panel);
  const cplx fine = omega_integrals(jd, quad, 2 * quad.nodes_per_panel);
  OmegaResult r;
  r.value = fine + gamma;
  r.doubling_change = std::abs(fine - coarse);
  if (!(r.doubling_change <= quad.tolerance)) {
    throw NumericalError("Omega quadrature did not converge at theta = " + std::to_string(jd.theta) +
                         ": doubling changed the value by " + std::to_string(r.doubling_change));
  }
  return r;
}

double default_exclusion_margin(std::size_t n) { return 3.0 * two_pi / static_cast<double>(n); }

DeviationPrediction assemble_deviation(const SymbolSpec& s, double theta, std::size_t n, cplx delta_beta_sq,
                                       cplx omega_value, std::optional<double> margin) {
  if (n < 2) throw ConfigError("predict_deviation needs n >= 2");
  DeviationPrediction d;
  d.theta = theta;
  d.n = n;
  d.tangent = imag_unit * derivative_on_cut(s, theta);
  d.omega = omega_value;
  d.delta_beta_sq = delta_beta_sq;
  const double nd = static_cast<double>(n);
  d.log_n_part = d.tangent * (-(std::log(nd) / nd) * delta_beta_sq);
  d.inv_n_part = d.tangent * (omega_value / nd);
  d.delta_a = d.tangent * (-(std::log(nd) / nd) * delta_beta_sq + omega_value / nd);
  d.near_endpoint = (pi - std::abs(theta)) < margin.value_or(default_exclusion_margin(n));
  return d;
}

DeviationPrediction predict_deviation(const SymbolSpec& s, double theta, std::size_t n, const QuadratureConfig& quad,
                                      std::optional<double> margin, std::size_t n_grid) {
  if (n < 2) throw ConfigError("predict_deviation needs n >= 2");
  const JumpData jd = f_continuous(s, theta, n_grid);
  const OmegaResult om = omega(jd, quad);
  return assemble_deviation(s, theta, n, jd.delta_beta_sq, om.value, margin);
}

cplx endpoint_asymptotic(double beta, double theta, std::size_t n) {
  if (!std::isfinite(beta)) throw ConfigError("endpoint_asymptotic: beta must be finite");
  if (!(theta < pi)) throw ConfigError("endpoint_asymptotic: theta must be below pi");
  if (n < 2) throw ConfigError("endpoint_asymptotic: n must be at least 2");
  const double x = std::log(pi - theta);
  const double nd = static_cast<double>(n);
  return imag_unit / pi * ((std::log(nd) / nd) * x + x * x / nd);
}

}  // namespace tspec
