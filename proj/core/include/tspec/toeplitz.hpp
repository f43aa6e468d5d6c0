#pragma once

#include <cstddef>
#include <ostream>

#include <Eigen/Dense>

#include "tspec/fourier.hpp"
#include "tspec/types.hpp"

namespace tspec {

/// Dense n x n Toeplitz section, entries(j, k) = a_{j-k}.
struct ToeplitzMatrix {
  std::size_t n = 0;
  Eigen::MatrixXcd entries;
  Eigen::VectorXcd first_col;  // a_0, a_1, ..., a_{n-1}
  Eigen::VectorXcd first_row;  // a_0, a_{-1}, ..., a_{1-n}
};

/// T_n from the coefficient series (zero outside its support). Throws ConfigError for n = 0.
ToeplitzMatrix build(const FourierSeries& coeffs, std::size_t n);

/// zeta I - T.
ToeplitzMatrix shifted(const ToeplitzMatrix& t, cplx zeta);

/// log det by partial-pivot LU. The imaginary part is reported modulo 2 pi in (-pi, pi].
/// Throws SingularMatrixError (with the pivot index) when a pivot is zero to working precision.
cplx log_det(const ToeplitzMatrix& t);
cplx log_det(const Eigen::MatrixXcd& m);

/// CSV dump with header "row,col,re,im", 17 significant digits.
void write_csv(std::ostream& os, const ToeplitzMatrix& t);

}  // namespace tspec
