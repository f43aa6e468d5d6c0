#include "tspec/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "tspec/error.hpp"

namespace tspec {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FourierSeries::FourierSeries() : k_min_(0), c_{cplx{0.0, 0.0}} {}

FourierSeries::FourierSeries(int k_min, std::vector<cplx> coeffs)
    : k_min_(k_min), c_(std::move(coeffs)) {
  if (c_.empty()) {
    throw ConfigError("FourierSeries: empty coefficient vector");
  }
}

FourierSeries::FourierSeries(const std::map<int, cplx>& coeffs) : FourierSeries() {
  if (coeffs.empty()) return;
  k_min_ = coeffs.begin()->first;
  const int k_max = coeffs.rbegin()->first;
  c_.assign(static_cast<std::size_t>(k_max - k_min_ + 1), cplx{0.0, 0.0});
  for (const auto& [k, v] : coeffs) c_[static_cast<std::size_t>(k - k_min_)] = v;
}

FourierSeries FourierSeries::constant(cplx c) { return FourierSeries(0, {c}); }

cplx FourierSeries::operator[](int k) const noexcept {
  if (k < k_min_ || k > k_max()) return {0.0, 0.0};
  return c_[static_cast<std::size_t>(k - k_min_)];
}

cplx FourierSeries::evaluate(double p) const {
  cplx sum{0.0, 0.0};
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const int k = k_min_ + static_cast<int>(i);
    sum += c_[i] * std::polar(1.0, k * p);
  }
  return sum;
}

cplx FourierSeries::derivative(double p) const {
  cplx sum{0.0, 0.0};
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const int k = k_min_ + static_cast<int>(i);
    sum += c_[i] * cplx{0.0, static_cast<double>(k)} * std::polar(1.0, k * p);
  }
  return sum;
}

cplx FourierSeries::difference(double q, double p) const {
  // e^{ikq} - e^{ikp} = 2i sin(k(q-p)/2) e^{ik(q+p)/2}
  const double half_diff = 0.5 * (q - p);
  const double mid = 0.5 * (q + p);
  cplx sum{0.0, 0.0};
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const int k = k_min_ + static_cast<int>(i);
    if (k == 0) continue;
    sum += c_[i] * cplx{0.0, 2.0 * std::sin(k * half_diff)} * std::polar(1.0, k * mid);
  }
  return sum;
}

FourierSeries FourierSeries::widened(int k_min, int k_max) const {
  const int lo = std::min(k_min, k_min_);
  const int hi = std::max(k_max, this->k_max());
  std::vector<cplx> c(static_cast<std::size_t>(hi - lo + 1), cplx{0.0, 0.0});
  for (int k = k_min_; k <= this->k_max(); ++k) c[static_cast<std::size_t>(k - lo)] = (*this)[k];
  return FourierSeries(lo, std::move(c));
}

std::vector<double> uniform_grid(std::size_t n) {
  std::vector<double> p(n);
  for (std::size_t j = 0; j < n; ++j) p[j] = -pi + two_pi * static_cast<double>(j) / static_cast<double>(n);
  return p;
}

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

void dft_in_place(std::span<cplx> data, int sign) {
  if (data.empty()) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf,
                            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

FourierSeries coefficients_from_samples(std::span<const cplx> samples, int k_min, int k_max) {
  const std::size_t n = samples.size();
  if (k_min > k_max) throw ConfigError("coefficients_from_samples: empty k range");
  const long half = static_cast<long>(n / 2);
  if (-static_cast<long>(k_min) >= half || static_cast<long>(k_max) >= half) {
    throw ConfigError("coefficients_from_samples: k range [" + std::to_string(k_min) + ", " +
                      std::to_string(k_max) + "] exceeds what " + std::to_string(n) +
                      " samples resolve");
  }
  std::vector<cplx> buf(samples.begin(), samples.end());
  dft_in_place(buf, -1);
  std::vector<cplx> c(static_cast<std::size_t>(k_max - k_min + 1));
  for (int k = k_min; k <= k_max; ++k) {
    const std::size_t idx = static_cast<std::size_t>((k % static_cast<long>(n) + static_cast<long>(n)) %
                                                     static_cast<long>(n));
    // grid starts at p = -pi: e^{-ik p_j} = (-1)^k e^{-2 pi i jk/n}
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    c[static_cast<std::size_t>(k - k_min)] = sign * buf[idx] / static_cast<double>(n);
  }
  return FourierSeries(k_min, std::move(c));
}

std::vector<cplx> samples_on_grid(const FourierSeries& f, std::size_t n) {
  if (2 * static_cast<long>(std::max(std::abs(f.k_min()), std::abs(f.k_max()))) < static_cast<long>(n)) {
    std::vector<cplx> buf(n, cplx{0.0, 0.0});
    for (int k = f.k_min(); k <= f.k_max(); ++k) {
      const std::size_t idx = static_cast<std::size_t>((k % static_cast<long>(n) + static_cast<long>(n)) %
                                                       static_cast<long>(n));
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      buf[idx] += sign * f[k];
    }
    dft_in_place(buf, +1);
    return buf;
  }
  std::vector<cplx> out(n);
  const auto grid = uniform_grid(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = f.evaluate(grid[j]);
  return out;
}

FourierSeries hilbert_transform(const FourierSeries& f) {
  const cplx inv_i{0.0, -1.0};
  std::vector<cplx> c(f.coefficients().begin(), f.coefficients().end());
  for (int k = f.k_min(); k <= f.k_max(); ++k) {
    auto& v = c[static_cast<std::size_t>(k - f.k_min())];
    v = (k >= 0 ? 1.0 : -1.0) * v * inv_i;
  }
  return FourierSeries(f.k_min(), std::move(c));
}

cplx hilbert_value(const FourierSeries& f, double p) { return hilbert_transform(f).evaluate(p); }

}  // namespace tspec
