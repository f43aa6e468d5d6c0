#pragma once

#include <cstddef>
#include <vector>

namespace tspec {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with m nodes on [-1, 1].
QuadratureRule gauss_legendre(std::size_t m);

/// Panel breakpoints on [a, b], graded geometrically (ratio `ratio`) toward both ends down to
/// a smallest panel of width min_width, with no panel wider than max_width.
std::vector<double> graded_breakpoints(double a, double b, double ratio, double min_width, double max_width);

/// Composite Gauss-Legendre rule (m nodes per panel) over consecutive breakpoints.
QuadratureRule composite_rule(const std::vector<double>& breakpoints, std::size_t m);

}  // namespace tspec
