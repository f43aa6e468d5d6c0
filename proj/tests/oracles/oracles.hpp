#pragma once

// Independent reference implementations used only by tests.

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "tspec/types.hpp"

namespace oracle {

using tspec::cplx;

/// Characteristic polynomial coefficients c_0..c_n (monic, c_n = 1) by Faddeev-LeVerrier.
std::vector<cplx> char_poly(const Eigen::MatrixXcd& a);

/// Roots of a monic polynomial by Durand-Kerner followed by Newton polishing.
std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs);

/// Determinant by cofactor expansion along the first row (n <= 8).
cplx cofactor_det(const Eigen::MatrixXcd& a);

/// Phase unwrapping by explicit +-2 pi corrections between neighbours.
std::vector<double> unwrap_phase(const std::vector<cplx>& z);

/// Minimum of sum_j |lambda[perm[j]] - target[j]|^2 over all permutations (n <= 8).
double brute_force_assignment(const std::vector<cplx>& lambda, const std::vector<cplx>& target);

/// log Gamma from GSL, imaginary part in (-pi, pi].
cplx gsl_lngamma(cplx z);

/// Smallest distance between each element of a and some element of b (greedy multiset match).
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b);

/// Composite Gauss-Legendre integral of f over [lo, hi] with the given panel count.
cplx integrate(const std::function<cplx(double)>& f, double lo, double hi, std::size_t panels = 200);

/// Reduce x to (-pi, pi].
double wrap_pi(double x);

}  // namespace oracle
