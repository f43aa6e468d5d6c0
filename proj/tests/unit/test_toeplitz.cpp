#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "tspec/eig.hpp"
#include "tspec/error.hpp"
#include "tspec/symbol.hpp"
#include "tspec/toeplitz.hpp"

using namespace tspec;

namespace {

FourierSeries series(std::map<int, cplx> m) { return FourierSeries(m); }

Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) a(i, j) = {g(rng), g(rng)};
  return a;
}

}  // namespace

TEST(Build, ScalarIdentity) {
  const auto t = build(series({{0, {2.0, 1.0}}}), 3);
  EXPECT_TRUE(t.entries.isApprox(cplx{2.0, 1.0} * Eigen::MatrixXcd::Identity(3, 3)));
}

TEST(Build, SubdiagonalShift) {
  const auto t = build(series({{1, 1.0}}), 3);
  for (Eigen::Index j = 0; j < 3; ++j)
    for (Eigen::Index k = 0; k < 3; ++k) EXPECT_EQ(t.entries(j, k), cplx(j - k == 1 ? 1.0 : 0.0));
}

TEST(Build, TwoByTwo) {
  const auto t = build(series({{1, 1.0}, {-1, 1.0}}), 2);
  Eigen::MatrixXcd expect(2, 2);
  expect << 0.0, 1.0, 1.0, 0.0;
  EXPECT_EQ(t.entries, expect);
}

TEST(Build, GeneratorConsistency) {
  const auto c = fourier_coeffs(PureJump{{0.8, 1.0 / 3.0}, 0.0}, -9, 9);
  const auto t = build(c, 10);
  for (Eigen::Index j = 0; j < 10; ++j) {
    for (Eigen::Index k = 0; k < 10; ++k) {
      EXPECT_EQ(t.entries(j, k), c[static_cast<int>(j - k)]);
    }
    EXPECT_EQ(t.first_col(j), c[static_cast<int>(j)]);
    EXPECT_EQ(t.first_row(j), c[-static_cast<int>(j)]);
  }
}

TEST(Build, ZeroDimensionIsAnError) { EXPECT_THROW(build(series({{0, 1.0}}), 0), ConfigError); }

TEST(Shifted, Examples) {
  const auto t = build(series({{0, 2.0}}), 4);
  const auto s = shifted(t, {5.0, 1.0});
  EXPECT_TRUE(s.entries.isApprox(cplx{3.0, 1.0} * Eigen::MatrixXcd::Identity(4, 4)));
  const auto neg = shifted(build(series({{1, 1.0}, {-2, 3.0}}), 4), 0.0);
  EXPECT_EQ(neg.entries, -build(series({{1, 1.0}, {-2, 3.0}}), 4).entries);
  const auto g = shifted(build(series({{1, 1.0}}), 4), {2.0, -1.0});
  EXPECT_EQ(g.first_col(0), cplx(2.0, -1.0));
  EXPECT_EQ(g.first_col(1), cplx(-1.0));
  EXPECT_EQ(g.first_col(2), cplx(0.0));
  EXPECT_EQ(g.first_row(0), cplx(2.0, -1.0));
}

TEST(LogDet, ScalarMatrix) {
  const cplx c{0.5, 2.0};
  const auto ld = log_det(build(series({{0, c}}), 6));
  const cplx expect = 6.0 * std::log(c);
  EXPECT_NEAR(ld.real(), expect.real(), 1e-13);
  EXPECT_NEAR(oracle::wrap_pi(ld.imag() - expect.imag()), 0.0, 1e-13);
}

TEST(LogDet, LowerTriangular) {
  const auto ld = log_det(build(series({{0, -3.0}, {1, 7.0}, {2, 1.0}}), 5));
  EXPECT_NEAR(ld.real(), 5.0 * std::log(3.0), 1e-13);
  EXPECT_NEAR(std::abs(oracle::wrap_pi(ld.imag() - pi)), 0.0, 1e-13);
}

TEST(LogDet, TridiagonalDeterminantOne) {
  const auto t = build(series({{1, 1.0}, {-1, 1.0}}), 4);
  EXPECT_LT(std::abs(oracle::cofactor_det(t.entries) - 1.0), 1e-15);
  const cplx ld = log_det(t);
  EXPECT_NEAR(ld.real(), 0.0, 1e-14);
  EXPECT_NEAR(oracle::wrap_pi(ld.imag()), 0.0, 1e-14);
}

TEST(LogDet, ImaginaryPartInPrincipalRange) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_matrix(rng, 12);
    const double im = log_det(a).imag();
    EXPECT_GT(im, -pi);
    EXPECT_LE(im, pi);
  }
}

TEST(LogDet, AgreesWithCofactorExpansion) {
  std::mt19937_64 rng(8);
  for (Eigen::Index n = 1; n <= 7; ++n) {
    const auto a = random_matrix(rng, n);
    const cplx det = oracle::cofactor_det(a);
    const cplx viaexp = std::exp(log_det(a));
    EXPECT_LT(std::abs(viaexp - det), 1e-10 * std::abs(det)) << n;
  }
}

TEST(LogDet, NoOverflowAtLargeN) {
  const auto ld = log_det(build(series({{0, 1e3}, {1, 1.0}}), 2048));
  EXPECT_NEAR(ld.real(), 2048 * std::log(1e3), 1e-9);
}

TEST(LogDet, SingularReportsPivot) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(4, 4);
  a(2, 2) = 0.0;
  a(3, 2) = 0.0;
  try {
    log_det(a);
    FAIL();
  } catch (const SingularMatrixError& e) {
    EXPECT_EQ(e.pivot(), 2u);
  }
}

TEST(LogDet, MatchesEigenvalueProduct) {
  const SymbolSpec s = PureJump{{0.8, 1.0 / 3.0}, 0.0};
  for (std::size_t n : {8u, 24u, 64u}) {
    const int k = static_cast<int>(n) - 1;
    const auto t = build(fourier_coeffs(s, -k, k), n);
    const cplx zeta{0.3, -0.4};
    const auto spec = eigenvalues(t.entries);
    cplx sum = 0.0;
    for (cplx l : spec.eigenvalues) sum += std::log(zeta - l);
    const cplx ld = log_det(shifted(t, zeta));
    EXPECT_LT(std::abs(cplx{ld.real() - sum.real(), oracle::wrap_pi(ld.imag() - sum.imag())}), 1e-8) << n;
  }
}

TEST(Csv, Dump) {
  std::ostringstream os;
  write_csv(os, build(series({{0, 0.1}, {-1, {0.0, 2.0}}}), 2));
  EXPECT_EQ(os.str(),
            "row,col,re,im\n"
            "0,0,0.10000000000000001,0\n"
            "0,1,0,2\n"
            "1,0,0,0\n"
            "1,1,0.10000000000000001,0\n");
}
