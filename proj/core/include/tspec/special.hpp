#pragma once

#include "tspec/types.hpp"

namespace tspec {

/// Euler–Mascheroni constant (30 significant digits; rounds to the nearest double).
inline constexpr double euler_gamma = 0.577215664901532860606512090082;

/// log Gamma(z) on the branch analytic in C \ (-inf, 0] (agrees with the real log-gamma on
/// the positive axis). Throws NumericalError at the poles z = 0, -1, -2, ...
cplx log_gamma(cplx z);

/// 1 / Gamma(z), entire; exactly zero at the poles of Gamma.
cplx reciprocal_gamma(cplx z);

/// log G(w) for the Barnes G-function, from the Weierstrass product
///   G(z+1) = (2 pi)^{z/2} e^{-z(z+1)/2 - C z^2/2} prod_n (1+z/n)^n e^{-z + z^2/(2n)},  w = z+1,
/// truncated after N factors with the remainder summed as a Hurwitz-zeta power series.
/// Continuous along rays from w = 1. Throws NumericalError at the zeros w = 0, -1, -2, ...
cplx ln_barnes_g(cplx w);

}  // namespace tspec
