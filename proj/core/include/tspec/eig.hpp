#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tspec/symbol.hpp"
#include "tspec/types.hpp"

namespace tspec {

struct Spectrum {
  std::vector<cplx> eigenvalues;
  /// Largest subdiagonal entry discarded at deflation, relative to the Frobenius norm of the
  /// balanced matrix; floored at n * machine epsilon.
  double residual_bound = 0.0;
};

/// All eigenvalues of a general complex matrix: diagonal balancing, Householder reduction to
/// Hessenberg form, then single-shift implicit QR with Wilkinson shifts, exceptional shifts after
/// 10 stalled sweeps on one eigenvalue, and a total budget of 40 n sweeps. Eigenvalues are
/// returned in deflation order. Throws ConvergenceError naming the unconverged index.
Spectrum eigenvalues(const Eigen::MatrixXcd& m);

/// theta_j = 2 pi (j - 1/2) / n - pi, j = 1..n (returned 0-based).
std::vector<double> theta_grid(std::size_t n);

struct MatchedSpectrum {
  /// pairs[j] = (theta_j, eigenvalue assigned to theta_j).
  std::vector<std::pair<double, cplx>> pairs;
  /// permutation[j] = index into the input spectrum of the eigenvalue assigned to theta_j.
  std::vector<std::size_t> permutation;
  double total_cost = 0.0;
};

/// Assign eigenvalues to the theta grid: project every eigenvalue to the nearest point of the
/// image curve (sampled on max(8192, 16 n) points), sort by projected angle, pair in order with
/// theta_j, then swap adjacent assignments while the total squared distance decreases.
/// Throws MatchingError when an assignment lands more than max(2, n / 4) grid cells away from
/// the eigenvalue's projection.
MatchedSpectrum match_to_grid(const Spectrum& spec, const SymbolSpec& s, std::size_t n);

}  // namespace tspec
