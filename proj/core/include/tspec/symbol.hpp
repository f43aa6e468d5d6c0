#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "tspec/fourier.hpp"
#include "tspec/types.hpp"

namespace tspec {

/// Pure jump e^{i beta (p - p0)}, with p - p0 reduced to [-pi, pi). The jump sits at p0 + pi;
/// p0 = 0 places it at p = +-pi.
struct PureJump {
  cplx beta;
  double p0 = 0.0;
};

/// Pure modulus singularity |e^{ip} - e^{ip0}|^{2 alpha}.
struct Modulus {
  cplx alpha;
  double p0 = 0.0;
};

/// Symbol given directly by a finite Fourier series.
struct FourierSymbol {
  FourierSeries coeffs;
};

/// Product of an optional jump, an optional modulus factor, and a smooth Fourier part.
struct Composite {
  std::optional<PureJump> jump;
  std::optional<Modulus> modulus;
  FourierSeries smooth = FourierSeries::constant(1.0);
};

using SymbolSpec = std::variant<PureJump, FourierSymbol, Composite>;

/// Reduce an angle to [-pi, pi).
double wrap_angle(double p) noexcept;

/// a(e^{ip}) for p in [-pi, pi) (other p are wrapped).
cplx evaluate(const SymbolSpec& s, double p);

/// The symbol on the closed interval [-pi, pi] as a function continuous up to both ends:
/// the value at p = pi is the limit from below. Only meaningful when any jump sits at +-pi.
cplx evaluate_on_cut(const SymbolSpec& s, double p);

/// d/dp of evaluate_on_cut.
cplx derivative_on_cut(const SymbolSpec& s, double p);

/// evaluate_on_cut(q) - evaluate_on_cut(p), free of cancellation as q -> p.
cplx difference_on_cut(const SymbolSpec& s, double q, double p);

/// Jump exponent, or 0 when the symbol has no jump factor.
cplx jump_exponent(const SymbolSpec& s) noexcept;

/// Throws ConfigError unless the symbol has a single genuine jump at +-pi and no modulus
/// singularity (alpha must be 0).
void require_single_jump_at_pi(const SymbolSpec& s);

/// Fourier coefficients a_k for k in [k_min, k_max]. Jump and modulus factors use closed
/// forms; n_quad only bounds the admissible range (n_quad >= 4 (|k_min| + |k_max| + 1)).
FourierSeries fourier_coeffs(const SymbolSpec& s, int k_min, int k_max, std::size_t n_quad = 8192);

/// Phase-unwrapped increment of log a over [-pi, pi], divided by 2 pi. Integer for continuous
/// nonvanishing symbols; Re beta for a pure jump.
double winding(const SymbolSpec& s, std::size_t n_grid = 8192);

/// Continuous logarithm along a sample path. The first sample takes the principal branch
/// shifted by the multiple of 2 pi i nearest anchor_phase (principal branch when absent).
/// Throws BranchError on a zero sample or a phase step larger than max_step.
std::vector<cplx> continuous_log(std::span<const cplx> samples,
                                 std::optional<double> anchor_phase = std::nullopt,
                                 double max_step = 0.9 * pi);

}  // namespace tspec
