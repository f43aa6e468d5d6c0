#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tspec/symbol.hpp"
#include "tspec/types.hpp"

namespace tspec {

/// Values of the regular part of F at sorted points of [-pi, pi].
using RegularSampler = std::function<std::vector<cplx>(std::span<const double>)>;

/// Continuous branch F(theta; p) of log(zeta - a(e^{ip})) at zeta = a(e^{i theta}), with the
/// step at p = theta removed. For a symbol, F = L(p) + log|2 sin((p - theta)/2)| where
///   L(p) = log[(zeta - a(p)) / (2 sin((theta - p)/2))]
/// is smooth on [-pi, pi] and unwrapped from the principal branch at p = -pi.
struct JumpData {
  double theta = 0.0;
  std::vector<double> p;  // closed uniform grid, p[0] = -pi, p.back() = pi
  std::vector<cplx> F;    // F on p; real part is -inf where p == theta
  cplx beta_plus;
  cplx beta_minus;
  cplx delta_beta_sq;
  /// True when F carries the log|2 sin((p - theta)/2)| kernel on top of the regular part.
  bool log_kernel = true;
  RegularSampler regular;
};

/// F for a symbol with a single jump at +-pi (alpha = 0). n_grid is the reference grid size
/// used for unwrapping. Throws NearZeroError when zeta - a vanishes away from p = theta.
JumpData f_continuous(const SymbolSpec& s, double theta, std::size_t n_grid = 8192);

/// JumpData for a given smooth F (no log kernel). delta_beta_sq = (i/pi)(F(pi) - F(-pi)).
JumpData make_jump_data(double theta, const std::function<cplx(double)>& f, std::size_t n_grid = 8192);

/// Closed form of F for a = e^{i beta p}:
///   (i/2) beta (p + theta + pi) + log 2 + i atan[cos(bR d/2) sinh(bI d/2) / (cosh(bI d/2) sin(bR d/2))]
///   + (1/2) log[(cosh(bI d) - cos(bR d)) / 2],  d = theta - p,
/// with the standard atan branch. Throws NumericalError when the atan denominator or the log
/// argument vanishes.
cplx f_closed_form_pure(cplx beta, double theta, double p);

struct QuadratureConfig {
  std::size_t nodes_per_panel = 16;
  double tolerance = 1e-8;
  double grading_ratio = 0.2;
  double min_relative_width = 1e-11;
  double max_width = 0.25;
};

struct OmegaResult {
  cplx value;
  /// |Omega(2m nodes per panel) - Omega(m nodes per panel)|.
  double doubling_change = 0.0;
};

/// Omega(theta) = PV int dp/2pi tan(p/2) (dbeta2 p/2 - i F) - i PV int dp/2pi cot((p-theta)/2) F
///              + log Gamma(1/2 + dbeta2/2) - log Gamma(1/2 - dbeta2/2).
/// Throws NumericalError if the doubling check exceeds the tolerance or at a Gamma pole.
OmegaResult omega(const JumpData& jd, const QuadratureConfig& quad = {});

/// log Gamma(1/2 + d/2) - log Gamma(1/2 - d/2); NumericalError at d = +-1, +-3, ...
cplx omega_gamma_term(cplx delta_beta_sq);

struct DeviationPrediction {
  double theta = 0.0;
  std::size_t n = 0;
  cplx delta_a;
  cplx log_n_part;  // tangent * (-(log n / n) dbeta2)
  cplx inv_n_part;  // tangent * Omega / n
  cplx tangent;     // i d/dtheta a(e^{i theta})
  cplx omega;
  cplx delta_beta_sq;
  bool near_endpoint = false;
};

/// Default endpoint exclusion margin 3 * 2 pi / n.
double default_exclusion_margin(std::size_t n);

/// delta_a from precomputed dbeta2 and Omega.
DeviationPrediction assemble_deviation(const SymbolSpec& s, double theta, std::size_t n, cplx delta_beta_sq,
                                       cplx omega_value, std::optional<double> margin = std::nullopt);

/// delta_a(e^{i theta}) = i a'(theta) (-(log n / n) dbeta2 + Omega / n). Near the endpoints
/// (pi - |theta| < margin) the result is still computed and flagged.
DeviationPrediction predict_deviation(const SymbolSpec& s, double theta, std::size_t n,
                                      const QuadratureConfig& quad = {},
                                      std::optional<double> margin = std::nullopt, std::size_t n_grid = 8192);

/// delta_a / a near theta = pi: (i/pi) [(log n / n) log(pi - theta) + (log(pi - theta))^2 / n].
cplx endpoint_asymptotic(double beta, double theta, std::size_t n);

}  // namespace tspec
