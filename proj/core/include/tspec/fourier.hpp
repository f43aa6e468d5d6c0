#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "tspec/types.hpp"

namespace tspec {

/// Finitely supported Fourier series f(e^{ip}) = sum_k c_k e^{ikp}.
/// Coefficients outside [k_min, k_max] are zero.
class FourierSeries {
 public:
  FourierSeries();
  FourierSeries(int k_min, std::vector<cplx> coeffs);
  explicit FourierSeries(const std::map<int, cplx>& coeffs);

  static FourierSeries constant(cplx c);

  int k_min() const noexcept { return k_min_; }
  int k_max() const noexcept { return k_min_ + static_cast<int>(c_.size()) - 1; }
  std::span<const cplx> coefficients() const noexcept { return c_; }

  /// Coefficient c_k, zero outside the support.
  cplx operator[](int k) const noexcept;

  cplx evaluate(double p) const;
  /// d/dp of the series at p.
  cplx derivative(double p) const;

  /// f(e^{iq}) - f(e^{ip}) without cancellation for q close to p.
  cplx difference(double q, double p) const;

  /// Support grown to include [k_min, k_max]; existing coefficients unchanged.
  FourierSeries widened(int k_min, int k_max) const;

 private:
  int k_min_;
  std::vector<cplx> c_;
};

/// Uniform grid p_j = -pi + 2 pi j / n, j = 0..n-1.
std::vector<double> uniform_grid(std::size_t n);

bool is_power_of_two(std::size_t n) noexcept;

/// In-place DFT, X_k = sum_j x_j exp(sign * 2 pi i j k / n) with sign = -1 (forward) or +1.
void dft_in_place(std::span<cplx> data, int sign);

/// Coefficients c_k = (1/n) sum_j f(p_j) e^{-ik p_j} of samples on uniform_grid(n),
/// for k in [k_min, k_max]. Requires |k| < n/2 for every requested k.
FourierSeries coefficients_from_samples(std::span<const cplx> samples, int k_min, int k_max);

/// Samples of a Fourier series on uniform_grid(n).
std::vector<cplx> samples_on_grid(const FourierSeries& f, std::size_t n);

/// Circular Hilbert transform in coefficient form:
/// (f^H)_0 = f_0 / i, (f^H)_j = f_j / i, (f^H)_{-j} = -f_{-j} / i for j > 0.
FourierSeries hilbert_transform(const FourierSeries& f);

/// Value of f^H at t = e^{ip}.
cplx hilbert_value(const FourierSeries& f, double p);

}  // namespace tspec
