#include "tspec/toeplitz.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tspec/error.hpp"
#include "tspec/symbol_io.hpp"

namespace tspec {

ToeplitzMatrix build(const FourierSeries& coeffs, std::size_t n) {
  if (n == 0) throw ConfigError("Toeplitz dimension must be at least 1");
  ToeplitzMatrix t;
  t.n = n;
  const auto ni = static_cast<Eigen::Index>(n);
  t.first_col.resize(ni);
  t.first_row.resize(ni);
  for (Eigen::Index m = 0; m < ni; ++m) {
    t.first_col(m) = coeffs[static_cast<int>(m)];
    t.first_row(m) = coeffs[-static_cast<int>(m)];
  }
  t.entries.resize(ni, ni);
  for (Eigen::Index k = 0; k < ni; ++k) {
    for (Eigen::Index j = 0; j < ni; ++j) {
      t.entries(j, k) = j >= k ? t.first_col(j - k) : t.first_row(k - j);
    }
  }
  return t;
}

ToeplitzMatrix shifted(const ToeplitzMatrix& t, cplx zeta) {
  ToeplitzMatrix s;
  s.n = t.n;
  s.entries = -t.entries;
  s.entries.diagonal().array() += zeta;
  s.first_col = -t.first_col;
  s.first_row = -t.first_row;
  s.first_col(0) += zeta;
  s.first_row(0) += zeta;
  return s;
}

cplx log_det(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cols() != n) throw ConfigError("log_det needs a nonempty square matrix");
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  const auto& packed = lu.matrixLU();
  const double scale = m.cwiseAbs().rowwise().sum().maxCoeff();
  const double tiny = std::numeric_limits<double>::epsilon() * static_cast<double>(n) * scale;
  double re = 0.0;
  double im = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx u = packed(i, i);
    const double au = std::abs(u);
    if (!(au > tiny)) {
      throw SingularMatrixError("matrix is singular to working precision at pivot " + std::to_string(i),
                                static_cast<std::size_t>(i));
    }
    re += std::log(au);
    im += std::arg(u);
    im = std::remainder(im, two_pi);
  }
  if (lu.permutationP().determinant() < 0) im += pi;
  im = std::remainder(im, two_pi);
  if (im <= -pi) im += two_pi;
  return {re, im};
}

cplx log_det(const ToeplitzMatrix& t) { return log_det(t.entries); }

void write_csv(std::ostream& os, const ToeplitzMatrix& t) {
  os << "row,col,re,im\n";
  const auto ni = static_cast<Eigen::Index>(t.n);
  for (Eigen::Index j = 0; j < ni; ++j) {
    for (Eigen::Index k = 0; k < ni; ++k) {
      const cplx v = t.entries(j, k);
      os << j << ',' << k << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    }
  }
}

}  // namespace tspec
