#include "tspec/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "tspec/error.hpp"

namespace tspec {

namespace {

using Eigen::Index;

double cabs1(cplx z) noexcept { return std::abs(z.real()) + std::abs(z.imag()); }

// Diagonal similarity by powers of two so that row and column norms are comparable.
void balance(Eigen::MatrixXcd& a) {
  const Index n = a.rows();
  constexpr double radix = 2.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::norm(a(j, i));
        r += std::norm(a(i, j));
      }
      c = std::sqrt(c);
      r = std::sqrt(r);
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix;
        r /= radix;
        g /= radix * radix;
        if (f > 1e300) break;
      }
      g = c / radix;
      while (g >= r) {
        f /= radix;
        c /= radix;
        r *= radix;
        g /= radix * radix;
        if (f < 1e-300) break;
      }
      if ((c + r) < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

// Two-element reflector in the style of zlarfg: returns tau and overwrites alpha with beta,
// x with the reflector tail.
cplx reflector2(cplx& alpha, cplx& x) {
  const double xnorm = std::abs(x);
  if (xnorm == 0.0 && alpha.imag() == 0.0) return {0.0, 0.0};
  const double alphr = alpha.real();
  const double alphi = alpha.imag();
  const double beta = -std::copysign(std::hypot(std::hypot(alphr, alphi), xnorm), alphr);
  const cplx tau{(beta - alphr) / beta, -alphi / beta};
  x /= (alpha - beta);
  alpha = beta;
  return tau;
}

struct QrResult {
  std::vector<cplx> values;
  double max_discarded = 0.0;
};

// Eigenvalues of an upper Hessenberg matrix, zlahqr-style, eigenvalues only.
QrResult hessenberg_qr(Eigen::MatrixXcd& h) {
  const Index n = h.rows();
  QrResult out;
  out.values.resize(static_cast<std::size_t>(n));
  if (n == 0) return out;
  if (n == 1) {
    out.values[0] = h(0, 0);
    return out;
  }
  const double ulp = std::numeric_limits<double>::epsilon();
  const double safmin = std::numeric_limits<double>::min();
  const double smlnum = safmin * (static_cast<double>(n) / ulp);

  // Make subdiagonal real.
  for (Index i = 1; i < n; ++i) {
    if (h(i, i - 1).imag() != 0.0) {
      cplx sc = h(i, i - 1) / cabs1(h(i, i - 1));
      sc = std::conj(sc) / std::abs(sc);
      h(i, i - 1) = std::abs(h(i, i - 1));
      h.row(i).segment(i, n - i) *= sc;
      const Index last = std::min(n - 1, i + 1);
      h.col(i).segment(0, last + 1) *= std::conj(sc);
    }
  }

  const long budget = 40L * n;
  long sweeps = 0;
  Index i = n - 1;
  while (i >= 0) {
    Index l = 0;
    bool converged = false;
    for (long its = 0;; ++its) {
      // Look for a single small subdiagonal element.
      Index k = i;
      for (; k > l; --k) {
        if (cabs1(h(k, k - 1)) <= smlnum) break;
        double tst = cabs1(h(k - 1, k - 1)) + cabs1(h(k, k));
        if (tst == 0.0) {
          if (k - 2 >= 0) tst += std::abs(h(k - 1, k - 2).real());
          if (k + 1 <= n - 1) tst += std::abs(h(k + 1, k).real());
        }
        if (std::abs(h(k, k - 1).real()) <= ulp * tst) {
          const double ab = std::max(cabs1(h(k, k - 1)), cabs1(h(k - 1, k)));
          const double ba = std::min(cabs1(h(k, k - 1)), cabs1(h(k - 1, k)));
          const double aa = std::max(cabs1(h(k, k)), cabs1(h(k - 1, k - 1) - h(k, k)));
          const double bb = std::min(cabs1(h(k, k)), cabs1(h(k - 1, k - 1) - h(k, k)));
          const double s = aa + ab;
          if (ba * (ab / s) <= std::max(smlnum, ulp * (bb * (aa / s)))) break;
        }
      }
      l = k;
      if (l > 0) {
        out.max_discarded = std::max(out.max_discarded, std::abs(h(l, l - 1)));
        h(l, l - 1) = 0.0;
      }
      if (l >= i) {
        converged = true;
        break;
      }
      if (sweeps >= budget) break;
      ++sweeps;

      // Shift.
      cplx t;
      if (its > 0 && its % 20 == 10) {
        const double s = 0.75 * std::abs(h(l + 1, l).real());
        t = s + h(l, l);
      } else if (its > 0 && its % 20 == 0) {
        const double s = 0.75 * std::abs(h(i, i - 1).real());
        t = s + h(i, i);
      } else {
        t = h(i, i);
        const cplx u = std::sqrt(h(i - 1, i)) * std::sqrt(h(i, i - 1));
        double s = cabs1(u);
        if (s != 0.0) {
          const cplx x = 0.5 * (h(i - 1, i - 1) - t);
          const double sx = cabs1(x);
          s = std::max(s, cabs1(x));
          cplx y = s * std::sqrt((x / s) * (x / s) + (u / s) * (u / s));
          if (sx > 0.0) {
            const cplx xs = x / sx;
            if (xs.real() * y.real() + xs.imag() * y.imag() < 0.0) y = -y;
          }
          t -= u * (u / (x + y));
        }
      }

      // Look for two consecutive small subdiagonal elements.
      Index m = i - 1;
      cplx v0;
      cplx v1;
      for (;; --m) {
        const cplx h11 = h(m, m);
        const cplx h22 = h(m + 1, m + 1);
        cplx h11s = h11 - t;
        double h21 = h(m + 1, m).real();
        const double s = cabs1(h11s) + std::abs(h21);
        h11s /= s;
        h21 /= s;
        v0 = h11s;
        v1 = h21;
        if (m == l) break;
        const double h10 = h(m, m - 1).real();
        if (std::abs(h10) * std::abs(h21) <= ulp * (cabs1(h11s) * (cabs1(h11) + cabs1(h22)))) break;
      }

      // Single-shift QR sweep on the active block l..i.
      for (Index kk = m; kk <= i - 1; ++kk) {
        if (kk > m) {
          v0 = h(kk, kk - 1);
          v1 = h(kk + 1, kk - 1);
        }
        const cplx t1 = reflector2(v0, v1);
        if (kk > m) {
          h(kk, kk - 1) = v0;
          h(kk + 1, kk - 1) = 0.0;
        }
        const cplx v2 = v1;
        const double t2 = (t1 * v2).real();
        for (Index j = kk; j <= i; ++j) {
          const cplx sum = std::conj(t1) * h(kk, j) + t2 * h(kk + 1, j);
          h(kk, j) -= sum;
          h(kk + 1, j) -= sum * v2;
        }
        const Index jmax = std::min(kk + 2, i);
        for (Index j = l; j <= jmax; ++j) {
          const cplx sum = t1 * h(j, kk) + t2 * h(j, kk + 1);
          h(j, kk) -= sum;
          h(j, kk + 1) -= sum * std::conj(v2);
        }
        if (kk == m && m > l) {
          // Keep h(m, m-1) real after the sweep started below l.
          cplx temp = 1.0 - t1;
          temp /= std::abs(temp);
          h(m + 1, m) *= std::conj(temp);
          if (m + 2 <= i) h(m + 2, m + 1) *= temp;
          for (Index j = m; j <= i; ++j) {
            if (j != m + 1) {
              if (i > j) h.row(j).segment(j + 1, i - j) *= temp;
              h.col(j).segment(l, j - l) *= std::conj(temp);
            }
          }
        }
      }

      // Ensure h(i, i-1) is real.
      cplx temp = h(i, i - 1);
      if (temp.imag() != 0.0) {
        const double rtemp = std::abs(temp);
        h(i, i - 1) = rtemp;
        temp /= rtemp;
        h.col(i).segment(l, i - l) *= temp;
      }
    }
    if (!converged) {
      throw ConvergenceError("eigenvalue iteration exceeded 40 n sweeps at index " + std::to_string(i),
                             static_cast<std::size_t>(i));
    }
    out.values[static_cast<std::size_t>(i)] = h(i, i);
    i = l - 1;
  }
  return out;
}

}  // namespace

Spectrum eigenvalues(const Eigen::MatrixXcd& m) {
  const Index n = m.rows();
  if (n == 0 || m.cols() != n) throw ConfigError("eigenvalues: need a nonempty square matrix");
  if (!m.allFinite()) throw ConfigError("eigenvalues: matrix has non-finite entries");
  Eigen::MatrixXcd a = m;
  balance(a);
  const double norm = a.norm();
  Spectrum out;
  const double floor = static_cast<double>(n) * std::numeric_limits<double>::epsilon();
  if (norm == 0.0) {
    out.eigenvalues.assign(static_cast<std::size_t>(n), cplx{0.0, 0.0});
    out.residual_bound = floor;
    return out;
  }
  Eigen::MatrixXcd h;
  if (n > 2) {
    Eigen::HessenbergDecomposition<Eigen::MatrixXcd> hess(a);
    h = hess.matrixH();
  } else {
    h = a;
  }
  QrResult qr = hessenberg_qr(h);
  out.eigenvalues = std::move(qr.values);
  out.residual_bound = std::max(floor, qr.max_discarded / norm);
  return out;
}

std::vector<double> theta_grid(std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t j = 0; j < n; ++j) {
    t[j] = two_pi * (static_cast<double>(j) + 0.5) / static_cast<double>(n) - pi;
  }
  return t;
}

MatchedSpectrum match_to_grid(const Spectrum& spec, const SymbolSpec& s, std::size_t n) {
  if (spec.eigenvalues.size() != n || n == 0) {
    throw ConfigError("match_to_grid: spectrum size " + std::to_string(spec.eigenvalues.size()) +
                      " does not match n = " + std::to_string(n));
  }
  const std::vector<double> theta = theta_grid(n);
  std::vector<cplx> target(n);
  for (std::size_t j = 0; j < n; ++j) target[j] = evaluate(s, theta[j]);

  // Projection onto the sampled image curve.
  const std::size_t m = std::max<std::size_t>(8192, 16 * n);
  std::vector<cplx> curve(m);
  for (std::size_t q = 0; q < m; ++q) {
    curve[q] = evaluate(s, two_pi * (static_cast<double>(q) + 0.5) / static_cast<double>(m) - pi);
  }
  std::vector<std::size_t> proj(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx lam = spec.eigenvalues[i];
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q < m; ++q) {
      const double d = std::norm(lam - curve[q]);
      if (d < best_d) {
        best_d = d;
        best = q;
      }
    }
    proj[i] = best;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& ev = spec.eigenvalues;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (proj[x] != proj[y]) return proj[x] < proj[y];
    if (ev[x].real() != ev[y].real()) return ev[x].real() < ev[y].real();
    return ev[x].imag() < ev[y].imag();
  });

  auto cost = [&](std::size_t eig_index, std::size_t j) { return std::norm(ev[eig_index] - target[j]); };
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const double now = cost(order[j], j) + cost(order[j + 1], j + 1);
      const double swapped = cost(order[j + 1], j) + cost(order[j], j + 1);
      if (swapped < now) {
        std::swap(order[j], order[j + 1]);
        improved = true;
      }
    }
  }

  const double cells_per_theta = static_cast<double>(m) / static_cast<double>(n);
  const double limit = std::max(2.0, static_cast<double>(n) / 4.0);
  std::vector<std::size_t> contested;
  MatchedSpectrum out;
  out.pairs.resize(n);
  out.permutation = order;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = order[j];
    out.pairs[j] = {theta[j], ev[i]};
    out.total_cost += cost(i, j);
    const double cell = (static_cast<double>(proj[i]) + 0.5) / cells_per_theta - 0.5;
    if (std::abs(cell - static_cast<double>(j)) > limit) contested.push_back(i);
  }
  if (!contested.empty()) {
    std::sort(contested.begin(), contested.end());
    throw MatchingError("match_to_grid: " + std::to_string(contested.size()) +
                            " eigenvalues could not be placed near their projection",
                        std::move(contested));
  }
  return out;
}

}  // namespace tspec
