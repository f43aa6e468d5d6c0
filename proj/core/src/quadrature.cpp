#include "tspec/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "tspec/error.hpp"
#include "tspec/types.hpp"

namespace tspec {

QuadratureRule gauss_legendre(std::size_t m) {
  if (m == 0) throw ConfigError("gauss_legendre: need at least one node");
  QuadratureRule r;
  r.nodes.resize(m);
  r.weights.resize(m);
  const double md = static_cast<double>(m);
  for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (md + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= m; ++k) {
        const double kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
      }
      if (m == 1) p0 = 1.0;
      dp = md * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    if (m == 1) {
      x = 0.0;
      dp = 1.0;
    }
    r.nodes[i] = -x;
    r.nodes[m - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.weights[i] = w;
    r.weights[m - 1 - i] = w;
  }
  if (m == 1) r.weights[0] = 2.0;
  return r;
}

std::vector<double> graded_breakpoints(double a, double b, double ratio, double min_width, double max_width) {
  if (!(b > a)) throw ConfigError("graded_breakpoints: empty interval");
  const double mid = 0.5 * (a + b);
  const double half = mid - a;
  std::vector<double> offsets;  // distances from an end, increasing
  for (double w = half * ratio; w > min_width; w *= ratio) offsets.push_back(w);
  std::reverse(offsets.begin(), offsets.end());
  std::vector<double> coarse;
  coarse.push_back(a);
  for (double o : offsets) coarse.push_back(a + o);
  coarse.push_back(mid);
  for (auto it = offsets.rbegin(); it != offsets.rend(); ++it) coarse.push_back(b - *it);
  coarse.push_back(b);

  std::vector<double> out;
  out.push_back(coarse.front());
  for (std::size_t i = 1; i < coarse.size(); ++i) {
    const double lo = coarse[i - 1];
    const double hi = coarse[i];
    const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / max_width)));
    for (std::size_t k = 1; k <= pieces; ++k) {
      out.push_back(k == pieces ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(pieces));
    }
  }
  return out;
}

QuadratureRule composite_rule(const std::vector<double>& breakpoints, std::size_t m) {
  const QuadratureRule base = gauss_legendre(m);
  QuadratureRule r;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    const double lo = breakpoints[i - 1];
    const double hi = breakpoints[i];
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    for (std::size_t k = 0; k < m; ++k) {
      r.nodes.push_back(c + h * base.nodes[k]);
      r.weights.push_back(h * base.weights[k]);
    }
  }
  return r;
}

}  // namespace tspec
