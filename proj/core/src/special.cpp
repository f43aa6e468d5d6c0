#include "tspec/special.hpp"

#include <array>
#include <cmath>
#include <string>

#include "tspec/error.hpp"

namespace tspec {

namespace {

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Stirling series for |z| large enough, Re z >= 8.
cplx log_gamma_stirling(cplx z) {
  // B_{2k} / (2k (2k-1)), k = 1..8
  static constexpr std::array<double, 8> c = {
      1.0 / 12.0,    -1.0 / 360.0,   1.0 / 1260.0,         -1.0 / 1680.0,
      1.0 / 1188.0,  -691.0 / 360360.0, 1.0 / 156.0,       -3617.0 / 122400.0};
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series{0.0, 0.0};
  cplx pw = inv;
  for (double ck : c) {
    series += ck * pw;
    pw *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(two_pi) + series;
}

// Hurwitz zeta(s, a) for integer s >= 2 and a >= 16, Euler–Maclaurin with no explicit terms.
double hurwitz_zeta_tail(int s, double a) {
  // B_{2j} / (2j)!
  static constexpr std::array<double, 6> b = {1.0 / 12.0,        -1.0 / 720.0,
                                              1.0 / 30240.0,     -1.0 / 1209600.0,
                                              1.0 / 47900160.0, -691.0 / 1307674368000.0};
  const double sd = s;
  double result = std::pow(a, 1.0 - sd) / (sd - 1.0) + 0.5 * std::pow(a, -sd);
  double rising = sd;  // s (s+1) ... (s + 2j - 2)
  double power = std::pow(a, -sd - 1.0);
  for (std::size_t j = 0; j < b.size(); ++j) {
    result += b[j] * rising * power;
    rising *= (sd + 2.0 * j + 1.0) * (sd + 2.0 * j + 2.0);
    power /= a * a;
  }
  return result;
}

}  // namespace

cplx log_gamma(cplx z) {
  if (is_nonpositive_integer(z)) {
    throw NumericalError("log_gamma: pole at z = " + std::to_string(z.real()));
  }
  cplx shift_sum{0.0, 0.0};
  // Upward recurrence; each principal log(z+k) stays continuous off the negative axis.
  while (z.real() < 8.0) {
    shift_sum += std::log(z);
    z += 1.0;
  }
  return log_gamma_stirling(z) - shift_sum;
}

cplx reciprocal_gamma(cplx z) {
  if (is_nonpositive_integer(z)) return {0.0, 0.0};
  return std::exp(-log_gamma(z));
}

cplx ln_barnes_g(cplx w) {
  if (is_nonpositive_integer(w)) {
    throw NumericalError("ln_barnes_g: G vanishes at w = " + std::to_string(w.real()));
  }
  const cplx z = w - 1.0;
  if (z == cplx{0.0, 0.0}) return {0.0, 0.0};

  // Product truncated at N with |z| / (N + 1) <= 1/8 so the remainder series converges fast.
  constexpr int hard_cap = 1000000;
  const int n_terms = std::min(hard_cap, std::max(64, static_cast<int>(std::ceil(8.0 * std::abs(z)))));

  cplx sum = 0.5 * z * std::log(two_pi) - 0.5 * z * (z + 1.0) - 0.5 * euler_gamma * z * z;
  for (int n = 1; n <= n_terms; ++n) {
    const double nd = n;
    sum += nd * std::log(1.0 + z / nd) - z + z * z / (2.0 * nd);
  }

  // sum_{n > N} [n log(1 + z/n) - z + z^2/(2n)] = sum_{m >= 3} (-1)^{m+1} z^m / m * zeta(m-1, N+1)
  const double a = n_terms + 1.0;
  cplx zm = z * z * z;
  cplx tail{0.0, 0.0};
  for (int m = 3; m < 400; ++m) {
    const cplx term = (m % 2 == 1 ? 1.0 : -1.0) * zm / static_cast<double>(m) *
                      hurwitz_zeta_tail(m - 1, a);
    tail += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
    zm *= z;
  }
  return sum + tail;
}

}  // namespace tspec
