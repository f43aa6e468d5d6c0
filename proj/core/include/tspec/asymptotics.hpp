#pragma once

#include <cstddef>
#include <span>

#include "tspec/fourier.hpp"
#include "tspec/symbol.hpp"
#include "tspec/types.hpp"

namespace tspec {

struct SzegoConstants {
  cplx H;
  cplx E_sum;
  cplx E_integral;
};

/// (log a)_0 for the supplied branch of log a.
cplx h_const(const FourierSeries& log_a);

/// sum_{k >= 1} k (log a)_k (log a)_{-k}.
cplx e_const_sum(const FourierSeries& log_a);

/// int dp/4pi [(log a)^H]_p log a from samples of log a on uniform_grid(N), N a power of two,
/// by spectral differentiation. Throws NumericalError when the top eighth of the spectrum
/// holds more than 1e-10 of the coefficient norm (grid too coarse).
cplx e_const_integral(std::span<const cplx> log_a_samples);

SzegoConstants szego_constants(const FourierSeries& log_a, std::size_t n_grid = 1024);

/// E_{0,beta}(a) for a = phi_beta b with the jump at +-pi and smooth zero-winding b:
///   E(b) + i beta [(log b)^H(e^{i pi}) - (log b)^H_0] + log G(1 + beta) + log G(1 - beta),
/// with the bracket evaluated as beta sum_{k >= 1} (-1)^k ((log b)_k - (log b)_{-k}).
/// log b is sampled on n_grid points (power of two) and unwrapped with its principal branch
/// at p = -pi.
cplx e0beta(const SymbolSpec& s, std::size_t n_grid = 8192);

/// Same constant from the coefficient series of log b directly.
cplx e0beta_from_log(const FourierSeries& log_b, cplx beta);

struct FHPrediction {
  std::size_t n = 0;
  cplx log_det_pred;
  cplx nH;
  cplx log_n_term;  // -beta_zeta^2 log n
  cplx constant;    // E_{0, beta_zeta}(zeta - a)
  cplx beta_zeta;
  cplx H;
};

/// Asymptotic log det(zeta - T_n(a)) = n H(zeta - a) - beta_zeta^2 log n + E_{0, beta_zeta}(zeta - a).
/// beta_zeta is the increment of the continuous log(zeta - a) over [-pi, pi] divided by 2 pi i;
/// zeta - a = e^{i beta_zeta p} e^{g} with g periodic, whose coefficients come from an n_grid FFT.
/// Throws NearZeroError if zeta lies within 1e-8 (relative to max|a|) of the sampled image.
FHPrediction fh_logdet_prediction(const SymbolSpec& s, cplx zeta, std::size_t n, std::size_t n_grid = 1 << 16);

/// |LHS - RHS| for the identity
///   int dp/4pi ([(log a)^H]_p log a - [(log phi)^H]_p log phi) - E(b)
///     = i beta [(log b)^H(e^{i pi}) - (log b)^H_0],   a = phi_beta b,
/// with the left side by composite Gauss-Legendre quadrature of
///   i beta tan(p/2) (g(p) - g(pi)) + (g^H)_p i beta p,  g = log b,
/// and the right side by the coefficient series.
double jump_identity_residual(const FourierSeries& log_b, cplx beta, std::size_t panels = 64);

}  // namespace tspec
