#include "tspec/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "tspec/error.hpp"
#include "tspec/special.hpp"

namespace tspec {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Reduce to (-pi, pi]: the left-limit representative at the cut.
double wrap_angle_left(double p) noexcept { return -wrap_angle(-p); }

// Argument of the jump factor on the cut branch.
double jump_argument(const PureJump& j, double p, bool on_cut) {
  if (on_cut && p >= pi) return wrap_angle_left(p - j.p0);
  return wrap_angle(p - j.p0);
}

cplx jump_value(const PureJump& j, double p, bool on_cut) {
  return std::exp(imag_unit * j.beta * jump_argument(j, p, on_cut));
}

double log_chord(const Modulus& m, double p) { return std::log(std::abs(2.0 * std::sin(0.5 * (p - m.p0)))); }

cplx modulus_value(const Modulus& m, double p) {
  if (m.alpha == cplx{0.0, 0.0}) return {1.0, 0.0};
  const double chord = std::abs(2.0 * std::sin(0.5 * (p - m.p0)));
  if (chord == 0.0) return m.alpha.real() > 0.0 ? cplx{0.0, 0.0} : cplx{INFINITY, 0.0};
  return std::exp(2.0 * m.alpha * std::log(chord));
}

cplx complex_sinc_pi(cplx x) {
  if (std::abs(x) < 1e-8) {
    const cplx px = pi * x;
    return 1.0 - px * px / 6.0;
  }
  return std::sin(pi * x) / (pi * x);
}

// Closed-form coefficients of the jump factor.
cplx jump_coeff(const PureJump& j, int k) {
  return std::polar(1.0, -k * j.p0) * complex_sinc_pi(j.beta - static_cast<double>(k));
}

cplx modulus_coeff(const Modulus& m, int k) {
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  const cplx num = std::exp(log_gamma(1.0 + 2.0 * m.alpha));
  return std::polar(1.0, -k * m.p0) * sign * num * reciprocal_gamma(1.0 + m.alpha + static_cast<double>(k)) *
         reciprocal_gamma(1.0 + m.alpha - static_cast<double>(k));
}

bool is_integer(cplx beta) {
  return std::abs(beta.imag()) < 1e-14 && std::abs(beta.real() - std::round(beta.real())) < 1e-12;
}

struct Factors {
  const PureJump* jump = nullptr;
  const Modulus* modulus = nullptr;
  const FourierSeries* smooth = nullptr;
};

Factors factors_of(const SymbolSpec& s) {
  Factors f;
  std::visit(overloaded{
                 [&](const PureJump& j) { f.jump = &j; },
                 [&](const FourierSymbol& fs) { f.smooth = &fs.coeffs; },
                 [&](const Composite& c) {
                   if (c.jump) f.jump = &*c.jump;
                   if (c.modulus && c.modulus->alpha != cplx{0.0, 0.0}) f.modulus = &*c.modulus;
                   f.smooth = &c.smooth;
                 },
             },
             s);
  return f;
}

cplx evaluate_impl(const SymbolSpec& s, double p, bool on_cut) {
  const Factors f = factors_of(s);
  cplx v{1.0, 0.0};
  if (f.jump) v *= jump_value(*f.jump, p, on_cut);
  if (f.modulus) v *= modulus_value(*f.modulus, p);
  if (f.smooth) v *= f.smooth->evaluate(p);
  return v;
}

}  // namespace

double wrap_angle(double p) noexcept {
  if (p >= -pi && p < pi) return p;
  double r = p - two_pi * std::floor((p + pi) / two_pi);
  if (r >= pi) r -= two_pi;
  return r;
}

cplx evaluate(const SymbolSpec& s, double p) { return evaluate_impl(s, wrap_angle(p), false); }

cplx evaluate_on_cut(const SymbolSpec& s, double p) { return evaluate_impl(s, p, true); }

cplx derivative_on_cut(const SymbolSpec& s, double p) {
  const Factors f = factors_of(s);
  const cplx jv = f.jump ? jump_value(*f.jump, p, true) : cplx{1.0, 0.0};
  const cplx mv = f.modulus ? modulus_value(*f.modulus, p) : cplx{1.0, 0.0};
  const cplx b = f.smooth ? f.smooth->evaluate(p) : cplx{1.0, 0.0};
  const cplx db = f.smooth ? f.smooth->derivative(p) : cplx{0.0, 0.0};
  cplx log_rate{0.0, 0.0};
  if (f.jump) log_rate += imag_unit * f.jump->beta;
  if (f.modulus) log_rate += f.modulus->alpha / std::tan(0.5 * (p - f.modulus->p0));
  return jv * mv * (b * log_rate + db);
}

cplx difference_on_cut(const SymbolSpec& s, double q, double p) {
  const Factors f = factors_of(s);
  const cplx jp = f.jump ? jump_value(*f.jump, p, true) : cplx{1.0, 0.0};
  const cplx mq = f.modulus ? modulus_value(*f.modulus, q) : cplx{1.0, 0.0};
  const cplx mp = f.modulus ? modulus_value(*f.modulus, p) : cplx{1.0, 0.0};
  const cplx bq = f.smooth ? f.smooth->evaluate(q) : cplx{1.0, 0.0};

  cplx dj{0.0, 0.0};
  if (f.jump) {
    // e^{i beta x} - e^{i beta y} = 2i sin(beta (x-y)/2) e^{i beta (x+y)/2}
    const double x = jump_argument(*f.jump, q, true);
    const double y = jump_argument(*f.jump, p, true);
    dj = 2.0 * imag_unit * std::sin(0.5 * f.jump->beta * (x - y)) *
         std::exp(0.5 * imag_unit * f.jump->beta * (x + y));
  }
  cplx dm{0.0, 0.0};
  if (f.modulus) {
    const cplx u = 2.0 * f.modulus->alpha * (log_chord(*f.modulus, q) - log_chord(*f.modulus, p));
    dm = 2.0 * std::sinh(0.5 * u) * std::sqrt(mq * mp);
  }
  const cplx db = f.smooth ? f.smooth->difference(q, p) : cplx{0.0, 0.0};
  return dj * mq * bq + jp * dm * bq + jp * mp * db;
}

cplx jump_exponent(const SymbolSpec& s) noexcept {
  const Factors f = factors_of(s);
  return f.jump ? f.jump->beta : cplx{0.0, 0.0};
}

void require_single_jump_at_pi(const SymbolSpec& s) {
  if (const auto* c = std::get_if<Composite>(&s); c && c->modulus && c->modulus->alpha != cplx{0.0, 0.0}) {
    throw ConfigError("modulus singularity with alpha != 0 is not supported here");
  }
  const Factors f = factors_of(s);
  if (!f.jump) throw ConfigError("symbol has no jump singularity");
  if (is_integer(f.jump->beta)) {
    throw ConfigError("jump exponent is an integer: the symbol is continuous and has no jump");
  }
  if (std::abs(f.jump->p0) > 1e-15) {
    throw ConfigError("jump must sit at p = +-pi (p0 = 0)");
  }
}

FourierSeries fourier_coeffs(const SymbolSpec& s, int k_min, int k_max, std::size_t n_quad) {
  if (k_min > k_max) throw ConfigError("fourier_coeffs: empty k range");
  const std::size_t needed =
      4 * (static_cast<std::size_t>(std::abs(k_min)) + static_cast<std::size_t>(std::abs(k_max)) + 1);
  if (n_quad < needed) {
    std::ostringstream msg;
    msg << "fourier_coeffs: k range [" << k_min << ", " << k_max << "] exceeds n_quad = " << n_quad
        << " (need at least " << needed << ")";
    throw ConfigError(msg.str());
  }
  const Factors f = factors_of(s);
  if (f.jump && f.modulus) {
    throw ConfigError("fourier_coeffs: jump combined with a nonzero modulus factor is not supported");
  }
  if (f.modulus && is_integer(-2.0 * f.modulus->alpha) && (-2.0 * f.modulus->alpha).real() > 0.0) {
    throw ConfigError("fourier_coeffs: modulus exponent gives a non-integrable symbol");
  }

  std::vector<cplx> out(static_cast<std::size_t>(k_max - k_min + 1), cplx{0.0, 0.0});
  const FourierSeries unit = FourierSeries::constant(1.0);
  const FourierSeries& smooth = f.smooth ? *f.smooth : unit;

  if (!f.jump && !f.modulus) {
    for (int k = k_min; k <= k_max; ++k) out[static_cast<std::size_t>(k - k_min)] = smooth[k];
    return FourierSeries(k_min, std::move(out));
  }

  // Singular factor (closed form, infinite support) convolved with the finite smooth part.
  auto singular = [&](int k) { return f.jump ? jump_coeff(*f.jump, k) : modulus_coeff(*f.modulus, k); };
  for (int k = k_min; k <= k_max; ++k) {
    cplx acc{0.0, 0.0};
    for (int m = smooth.k_min(); m <= smooth.k_max(); ++m) {
      const cplx bm = smooth[m];
      if (bm != cplx{0.0, 0.0}) acc += bm * singular(k - m);
    }
    out[static_cast<std::size_t>(k - k_min)] = acc;
  }
  return FourierSeries(k_min, std::move(out));
}

double winding(const SymbolSpec& s, std::size_t n_grid) {
  if (n_grid < 2) throw ConfigError("winding: grid needs at least 2 points");
  std::vector<cplx> samples(n_grid + 1);
  double max_abs = 0.0;
  for (std::size_t j = 0; j <= n_grid; ++j) {
    const double p = -pi + two_pi * static_cast<double>(j) / static_cast<double>(n_grid);
    samples[j] = evaluate_on_cut(s, p);
    max_abs = std::max(max_abs, std::abs(samples[j]));
  }
  for (std::size_t j = 0; j <= n_grid; ++j) {
    if (!(std::abs(samples[j]) > 1e-12 * max_abs)) {
      const double p = -pi + two_pi * static_cast<double>(j) / static_cast<double>(n_grid);
      throw NearZeroError("winding: symbol modulus vanishes near p = " + std::to_string(p), p);
    }
  }
  const auto logs = continuous_log(samples, std::nullopt, pi);
  return (logs.back().imag() - logs.front().imag()) / two_pi;
}

std::vector<cplx> continuous_log(std::span<const cplx> samples, std::optional<double> anchor_phase,
                                 double max_step) {
  std::vector<cplx> out(samples.size());
  if (samples.empty()) return out;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    if (samples[j] == cplx{0.0, 0.0} || !std::isfinite(std::abs(samples[j]))) {
      throw BranchError("continuous_log: zero or non-finite sample at index " + std::to_string(j), j);
    }
  }
  double phase = std::arg(samples[0]);
  if (anchor_phase) phase += two_pi * std::round((*anchor_phase - phase) / two_pi);
  out[0] = {std::log(std::abs(samples[0])), phase};
  for (std::size_t j = 1; j < samples.size(); ++j) {
    const double step = std::arg(samples[j] / samples[j - 1]);
    if (std::abs(step) > max_step) {
      throw BranchError("continuous_log: phase step " + std::to_string(step) + " at index " +
                            std::to_string(j) + " is not resolved by the sampling",
                        j);
    }
    phase += step;
    out[j] = {std::log(std::abs(samples[j])), phase};
  }
  return out;
}

}  // namespace tspec
