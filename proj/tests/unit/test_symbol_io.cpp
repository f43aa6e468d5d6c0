#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>

#include "tspec/error.hpp"
#include "tspec/symbol_io.hpp"

using namespace tspec;

namespace {

double random_double(std::mt19937_64& rng) {
  for (;;) {
    const double d = std::bit_cast<double>(rng());
    if (std::isfinite(d)) return d;
  }
}

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

bool same_bits(cplx a, cplx b) { return same_bits(a.real(), b.real()) && same_bits(a.imag(), b.imag()); }

}  // namespace

TEST(FormatDouble, SeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(format_double(-0.0), "-0");
}

TEST(FormatDouble, BitExactRoundTrip) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 20000; ++i) {
    const double d = random_double(rng);
    ASSERT_TRUE(same_bits(parse_double(format_double(d)), d)) << format_double(d);
  }
  for (double d : {5e-324, 2.2250738585072014e-308, 1.7976931348623157e308, 1.0 / 3.0}) {
    EXPECT_TRUE(same_bits(parse_double(format_double(d)), d));
  }
}

TEST(ParseDouble, RejectsGarbage) {
  EXPECT_THROW(parse_double(""), ConfigError);
  EXPECT_THROW(parse_double("1.5x"), ConfigError);
  EXPECT_THROW(parse_double("abc"), ConfigError);
}

TEST(SymbolFile, PureJumpRoundTrip) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const PureJump j{{random_double(rng), random_double(rng)}, std::ldexp(static_cast<double>(rng() >> 11), -53) * 6.0 - 3.0};
    const SymbolSpec back = read_symbol(write_symbol(j));
    const auto& jb = std::get<PureJump>(back);
    ASSERT_TRUE(same_bits(jb.beta, j.beta));
    ASSERT_TRUE(same_bits(jb.p0, j.p0));
  }
}

TEST(SymbolFile, FourierRoundTrip) {
  std::mt19937_64 rng(2);
  std::vector<cplx> c(7);
  for (auto& x : c) x = {random_double(rng), random_double(rng)};
  const FourierSymbol f{FourierSeries(-3, c)};
  const auto back = std::get<FourierSymbol>(read_symbol(write_symbol(f)));
  ASSERT_EQ(back.coeffs.k_min(), -3);
  ASSERT_EQ(back.coeffs.k_max(), 3);
  for (int k = -3; k <= 3; ++k) EXPECT_TRUE(same_bits(back.coeffs[k], f.coeffs[k]));
}

TEST(SymbolFile, CompositeRoundTrip) {
  Composite c;
  c.jump = PureJump{{0.8, 1.0 / 3.0}, 0.0};
  c.modulus = Modulus{{0.1, -0.7}, 1.25};
  c.smooth = FourierSeries(std::map<int, cplx>{{0, 1.0}, {2, {std::acos(-1.0), 1e-300}}});
  const auto back = std::get<Composite>(read_symbol(write_symbol(c)));
  ASSERT_TRUE(back.jump && back.modulus);
  EXPECT_TRUE(same_bits(back.jump->beta, c.jump->beta));
  EXPECT_TRUE(same_bits(back.modulus->alpha, c.modulus->alpha));
  EXPECT_TRUE(same_bits(back.modulus->p0, c.modulus->p0));
  EXPECT_TRUE(same_bits(back.smooth[2], c.smooth[2]));
  EXPECT_TRUE(same_bits(back.smooth[1], cplx{0.0, 0.0}));
}

TEST(SymbolFile, MultipleDocuments) {
  const std::vector<SymbolSpec> in{PureJump{0.5, 0.0}, FourierSymbol{FourierSeries::constant(3.0)}};
  const auto out = read_symbols(write_symbols(in));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<PureJump>(out[0]));
  EXPECT_TRUE(std::holds_alternative<FourierSymbol>(out[1]));
  EXPECT_THROW(read_symbol(write_symbols(in)), ConfigError);
}

TEST(SymbolFile, HandWrittenDocument) {
  const auto s = read_symbol("kind: pure_jump\nbeta_re: 0.8\nbeta_im: 0.33333333333333331\n");
  const auto& j = std::get<PureJump>(s);
  EXPECT_EQ(j.beta, cplx(0.8, 1.0 / 3.0));
  EXPECT_EQ(j.p0, 0.0);
  const auto f = std::get<FourierSymbol>(read_symbol("kind: fourier\ncoeffs: [[1, 1, 0], [-1, 1, 0]]\n"));
  EXPECT_EQ(f.coeffs[1], cplx(1.0));
  EXPECT_EQ(f.coeffs[0], cplx(0.0));
}

TEST(SymbolFile, Errors) {
  EXPECT_THROW(read_symbol("beta_re: 1\n"), ConfigError);
  EXPECT_THROW(read_symbol("kind: spiral\n"), ConfigError);
  EXPECT_THROW(read_symbol("kind: pure_jump\nbeta_re: one\n"), ConfigError);
  EXPECT_THROW(read_symbol("kind: pure_jump\nbeta_re: 0.5\np0: 3.5\n"), ConfigError);
  EXPECT_THROW(read_symbol("kind: fourier\n"), ConfigError);
  EXPECT_THROW(read_symbol("kind: fourier\ncoeffs: [[1, 1, 0], [1, 2, 0]]\n"), ConfigError);
  EXPECT_THROW(read_symbol("kind: fourier\ncoeffs: [[0.5, 1, 0]]\n"), ConfigError);
  EXPECT_THROW(read_symbol("kind: [unclosed\n"), ConfigError);
  EXPECT_THROW(read_symbol_file("/nonexistent/symbol.yaml"), ConfigError);
}

TEST(SymbolFile, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "tspec_symbol_io_test.yaml";
  const PureJump j{{0.8, 1.0 / 3.0}, -0.25};
  write_symbol_file(path, j);
  const auto back = std::get<PureJump>(read_symbol_file(path));
  EXPECT_TRUE(same_bits(back.beta, j.beta));
  std::filesystem::remove(path);
}
