#include <random>

#include <gtest/gtest.h>

#include "ajpeg/transform.hpp"
#include "test_util.hpp"

using namespace ajpeg;
using ajpeg::testing::dct2_direct;
using ajpeg::testing::frobenius;
using ajpeg::testing::idct2_direct;
using ajpeg::testing::max_abs_diff;
using ajpeg::testing::random_matrix;

TEST(QuantMatrixTest, MatchesJpegTable) {
  // Row 1, row 5 and the last row spot-check the standard luminance table.
  const int row0[] = {16, 11, 10, 16, 24, 40, 51, 61};
  const int row4[] = {18, 22, 37, 56, 68, 109, 103, 77};
  const int row7[] = {72, 92, 95, 98, 112, 100, 103, 99};
  for (int j = 0; j < 8; ++j) {
    EXPECT_EQ(kJpegQuant[j], row0[j]);
    EXPECT_EQ(kJpegQuant[32 + j], row4[j]);
    EXPECT_EQ(kJpegQuant[56 + j], row7[j]);
  }
  for (int q : kJpegQuant) EXPECT_GE(q, 10);
}

TEST(Dct2Test, ConstantBlockHasOnlyDc) {
  Matrix<double> ones(8, 8, 1.0);
  const Matrix<double> oracle = dct2_direct(ones);
  EXPECT_NEAR(oracle(0, 0), 8.0, 1e-12);
  const Matrix<double> c = dct2(ones);
  EXPECT_NEAR(c(0, 0), 8.0, 1e-12);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      if (i + j > 0) {
        EXPECT_NEAR(c(i, j), 0.0, 1e-12);
      }
    }
}

TEST(Dct2Test, ZeroBlock) {
  const Matrix<double> c = dct2(Matrix<double>(16, 8));
  for (double v : c.values()) EXPECT_EQ(v, 0.0);
  const Matrix<double> x = idct2(Matrix<double>(8, 8));
  for (double v : x.values()) EXPECT_EQ(v, 0.0);
}

TEST(Dct2Test, MatchesDirectSummation) {
  std::mt19937_64 rng(1);
  for (std::size_t n : {8u, 16u, 32u}) {
    const Matrix<double> x = random_matrix(n, n, rng);
    EXPECT_LE(max_abs_diff(dct2(x), dct2_direct(x)), 1e-9) << n;
    const Matrix<double> c = random_matrix(n, n, rng);
    EXPECT_LE(max_abs_diff(idct2(c), idct2_direct(c)), 1e-9) << n;
  }
  const Matrix<double> rect = random_matrix(8, 32, rng);
  EXPECT_LE(max_abs_diff(dct2(rect), dct2_direct(rect)), 1e-9);
}

TEST(Dct2Test, OrthonormalAndInvertibleUpTo256) {
  std::mt19937_64 rng(2);
  for (std::size_t n : {8u, 16u, 32u, 64u, 128u, 256u}) {
    const Matrix<double> x = random_matrix(n, n, rng);
    const Matrix<double> c = dct2(x);
    const double nx = frobenius(x);
    EXPECT_LE(std::abs(frobenius(c) - nx), 1e-10 * nx) << n;
    EXPECT_LE(max_abs_diff(idct2(c), x), 1e-10) << n;
  }
  const Matrix<double> rect = random_matrix(16, 64, rng);
  EXPECT_LE(max_abs_diff(idct2(dct2(rect)), rect), 1e-10);
}

TEST(Idct2Test, UnitDcGivesConstantEighth) {
  Matrix<double> c(8, 8);
  c(0, 0) = 1.0;
  const Matrix<double> x = idct2(c);
  for (double v : x.values()) EXPECT_NEAR(v, 1.0 / 8.0, 1e-15);
}

TEST(TopLeftTest, RestrictIdentityOn8x8) {
  std::mt19937_64 rng(3);
  const Matrix<double> m = random_matrix(8, 8, rng);
  const Block8 b = tl_restrict(m);
  for (std::size_t k = 0; k < 64; ++k) EXPECT_EQ(b[k], m.data()[k]);
  const Matrix<double> e = tl_embed(b, 8, 8);
  EXPECT_EQ(e, m);
}

TEST(TopLeftTest, SingleCoefficientInsideBlock) {
  Matrix<double> c(32, 32);
  c(5, 5) = 15.0;
  const Block8 b = tl_restrict(c);
  for (std::size_t k = 0; k < 64; ++k) EXPECT_EQ(b[k], k == 5 * 8 + 5 ? 15.0 : 0.0);
}

TEST(TopLeftTest, CoefficientOutsideBlockDropped) {
  Matrix<double> c(16, 16);
  c(12, 3) = 7.0;
  for (double v : tl_restrict(c)) EXPECT_EQ(v, 0.0);
}

TEST(TopLeftTest, EmbedThenRestrictIsIdentity) {
  std::mt19937_64 rng(4);
  Block8 m{};
  std::uniform_real_distribution<double> uni(-5, 5);
  for (double& v : m) v = uni(rng);
  for (auto [h, w] : {std::pair{8u, 8u}, {16u, 32u}, {64u, 64u}}) {
    const Matrix<double> e = tl_embed(m, h, w);
    EXPECT_EQ(tl_restrict(e), m);
    double outside = 0.0;
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < w; ++j)
        if (i >= 8 || j >= 8) outside += std::abs(e(i, j));
    EXPECT_EQ(outside, 0.0);
  }
  const Matrix<double> zero = tl_embed(Block8{}, 16, 16);
  for (double v : zero.values()) EXPECT_EQ(v, 0.0);
}

TEST(TopLeftTest, RejectsSmallBlocks) {
  EXPECT_THROW(tl_restrict(Matrix<double>(4, 8)), InvalidArgument);
  EXPECT_THROW(tl_embed(Block8{}, 8, 4), InvalidArgument);
}

TEST(TopLeftTest, FastPathMatchesFullTransform) {
  std::mt19937_64 rng(5);
  for (auto [h, w] : {std::pair{8u, 8u}, {32u, 32u}, {16u, 64u}}) {
    const Matrix<double> x = random_matrix(h, w, rng);
    const Block8 fast = tl_coefficients(x);
    const Block8 full = tl_restrict(dct2(x));
    for (std::size_t k = 0; k < 64; ++k) EXPECT_NEAR(fast[k], full[k], 1e-12);
    const Matrix<double> a = synthesize_tl(full, h, w);
    const Matrix<double> b = idct2(tl_embed(full, h, w));
    EXPECT_LE(max_abs_diff(a, b), 1e-12);
  }
}

TEST(QuantizeTest, ZeroAndThreshold) {
  for (auto v : quantize(Block8{}).values) EXPECT_EQ(v, 0);
  Block8 small{};
  for (std::size_t k = 0; k < 64; ++k) small[k] = (k % 2 ? 1 : -1) * (kJpegQuant[k] / 2.0 - 1e-9);
  for (auto v : quantize(small).values) EXPECT_EQ(v, 0);
}

TEST(QuantizeTest, ConstantBlockDcRoundsHalfAway) {
  Block8 c{};
  c[0] = 8.0; // DC of the constant-one 8x8 block
  EXPECT_EQ(quantize(c).values[0], 1);
  c[0] = -8.0;
  EXPECT_EQ(quantize(c).values[0], -1);
  CoeffBlock f;
  f.values[0] = 1;
  EXPECT_EQ(dequantize(f)[0], 16.0);
  for (std::size_t k = 1; k < 64; ++k) EXPECT_EQ(dequantize(f)[k], 0.0);
}

TEST(QuantizeTest, RoundTripWithinHalfStep) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> uni(-500, 500);
  for (int t = 0; t < 200; ++t) {
    Block8 c{};
    for (double& v : c) v = uni(rng);
    const Block8 back = dequantize(quantize(c));
    for (std::size_t k = 0; k < 64; ++k) ASSERT_LE(std::abs(back[k] - c[k]), kJpegQuant[k] / 2.0 + 1e-9);
  }
}

TEST(ApproxTest, EightByEightReproducedExactly) {
  std::mt19937_64 rng(7);
  const Matrix<double> x = random_matrix(8, 8, rng);
  EXPECT_LE(max_abs_diff(approx_block_unquantized(x), x), 1e-13);
}

TEST(ApproxTest, SingleCoefficientImageReproduced) {
  Matrix<double> c(32, 32);
  c(5, 5) = 15.0;
  const Matrix<double> x = idct2(c);
  EXPECT_LE(max_abs_diff(approx_block_unquantized(x), x), 1e-12);
}

TEST(ApproxTest, ConstantElementsReproduced) {
  for (auto [h, w] : {std::pair{8u, 8u}, {32u, 64u}, {128u, 128u}}) {
    const Matrix<double> x(h, w, 0.37);
    EXPECT_LE(max_abs_diff(approx_block_unquantized(x), x), 1e-13);
  }
}

TEST(ApproxTest, FinalOfZeroBlockIsZeroInSampleUnits) {
  // Zero samples sit at -128 after the level shift; DC -128*8/16 = -64 is exact.
  const Matrix<double> x(8, 8, 0.0);
  EXPECT_LE(max_abs_diff(approx_block_final(x), x), 1e-14);
}

TEST(ApproxTest, FinalOfConstantOneBlock) {
  // DC in 8-bit units: 255*8 - 128*8 = 1016; 1016/16 = 63.5 -> 64; 64*16 = 1024;
  // +1024 = 2048; each pixel 2048 / 8 / 255 = 256/255.
  const Matrix<double> x(8, 8, 1.0);
  const Matrix<double> y = approx_block_final(x);
  for (double v : y.values()) EXPECT_NEAR(v, 256.0 / 255.0, 1e-14);
}

TEST(ApproxTest, FinalMatchesDecodeOfEncodedBlock) {
  std::mt19937_64 rng(8);
  const Matrix<double> x = random_matrix(32, 32, rng, 0.0, 1.0);
  const Matrix<double> a = approx_block_final(x);
  const Matrix<double> b = decode_block(encode_block(x), 32, 32);
  EXPECT_EQ(a, b);
}
