#include <random>

#include <gtest/gtest.h>

#include "ajpeg/image.hpp"
#include "ajpeg/ppm.hpp"

using namespace ajpeg;

TEST(ColorTest, BlackAndWhite) {
  const ColorTriple black = rgb_to_ycbcr(0, 0, 0);
  EXPECT_DOUBLE_EQ(black.y, 0.0);
  EXPECT_DOUBLE_EQ(black.cb, 0.5);
  EXPECT_DOUBLE_EQ(black.cr, 0.5);
  const ColorTriple white = rgb_to_ycbcr(1, 1, 1);
  EXPECT_NEAR(white.y, 1.0, 1e-15);
  EXPECT_NEAR(white.cb, 0.5, 1e-15);
  EXPECT_NEAR(white.cr, 0.5, 1e-15);
}

TEST(ColorTest, GrayHasNeutralChroma) {
  for (double g : {0.0, 0.13, 0.5, 0.77, 1.0}) {
    const ColorTriple t = rgb_to_ycbcr(g, g, g);
    EXPECT_NEAR(t.y, g, 1e-15);
    EXPECT_NEAR(t.cb, 0.5, 1e-15);
    EXPECT_NEAR(t.cr, 0.5, 1e-15);
  }
}

TEST(ColorTest, InverseOfBlack) {
  const auto rgb = ycbcr_to_rgb_unclamped({0.0, 0.5, 0.5});
  for (double v : rgb) EXPECT_DOUBLE_EQ(v, 0.0);
}

TEST(ColorTest, RoundTripRandomTriples) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double r = uni(rng), g = uni(rng), b = uni(rng);
    const ColorTriple t = rgb_to_ycbcr(r, g, b);
    ASSERT_GE(t.y, -1e-15);
    ASSERT_LE(t.y, 1.0 + 1e-15);
    ASSERT_GE(t.cb, -1e-15);
    ASSERT_LE(t.cb, 1.0 + 1e-15);
    ASSERT_GE(t.cr, -1e-15);
    ASSERT_LE(t.cr, 1.0 + 1e-15);
    const auto back = ycbcr_to_rgb_unclamped(t);
    ASSERT_NEAR(back[0], r, 1e-6);
    ASSERT_NEAR(back[1], g, 1e-6);
    ASSERT_NEAR(back[2], b, 1e-6);
  }
}

TEST(ColorTest, PlaneConversionClampsOutOfGamut) {
  ChannelPlane y(1, 1, 1.0), cb(1, 1, 1.0), cr(1, 1, 1.0);
  const RasterImage img = ycbcr_to_rgb(y, cb, cr);
  for (double v : img.samples()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_DOUBLE_EQ(img.at(0, 0, 0), 1.0);
}

TEST(ColorTest, PlaneDimensionMismatchThrows) {
  EXPECT_THROW(ycbcr_to_rgb(ChannelPlane(2, 2), ChannelPlane(2, 2), ChannelPlane(2, 4)),
               InvalidArgument);
}

TEST(ChromaTest, ConstantDownsamples) {
  const ChannelPlane p(8, 4, 0.3);
  const ChannelPlane d = downsample_chroma(p);
  ASSERT_EQ(d.rows(), 4u);
  ASSERT_EQ(d.cols(), 2u);
  for (double v : d.values.values()) EXPECT_DOUBLE_EQ(v, 0.3);
}

TEST(ChromaTest, MeanOfBlock) {
  ChannelPlane p(2, 2);
  p(0, 0) = 0;
  p(0, 1) = 0;
  p(1, 0) = 1;
  p(1, 1) = 1;
  EXPECT_DOUBLE_EQ(downsample_chroma(p)(0, 0), 0.5);
}

TEST(ChromaTest, CheckerboardAveragesToHalf) {
  ChannelPlane p(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) p(r, c) = (r + c) % 2;
  const ChannelPlane d = downsample_chroma(p);
  for (double v : d.values.values()) EXPECT_DOUBLE_EQ(v, 0.5);
}

TEST(ChromaTest, OddDimensionThrows) {
  EXPECT_THROW(downsample_chroma(ChannelPlane(3, 4)), InvalidArgument);
}

TEST(ChromaTest, UpsampleReplicates) {
  const ChannelPlane u = upsample_chroma(ChannelPlane(1, 1, 0.7));
  ASSERT_EQ(u.rows(), 2u);
  ASSERT_EQ(u.cols(), 2u);
  for (double v : u.values.values()) EXPECT_DOUBLE_EQ(v, 0.7);
}

TEST(ChromaTest, UpsampleMustHitTargetFrame) {
  EXPECT_NO_THROW(upsample_chroma(ChannelPlane(2, 1), 4, 2));
  EXPECT_THROW(upsample_chroma(ChannelPlane(2, 1), 2, 2), InvalidArgument);
}

TEST(ChromaTest, DownsampleInvertsUpsample) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    ChannelPlane p(1 + trial % 5, 1 + trial % 7);
    for (double& v : p.values.values()) v = uni(rng);
    EXPECT_EQ(downsample_chroma(upsample_chroma(p)).values, p.values);
  }
}

TEST(PadTest, PowerOfTwoUnchanged) {
  Matrix<double> m(8, 8, 0.25);
  const ChannelPlane p = pad_to_pow2(m);
  EXPECT_EQ(p.values, m);
  EXPECT_EQ(p.orig_rows, 8u);
  EXPECT_EQ(p.orig_cols, 8u);
}

TEST(PadTest, EdgeReplication) {
  Matrix<double> m(6, 6);
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) m(r, c) = static_cast<double>(r * 10 + c);
  const ChannelPlane p = pad_to_pow2(m);
  ASSERT_EQ(p.rows(), 8u);
  ASSERT_EQ(p.cols(), 8u);
  for (std::size_t c = 0; c < 6; ++c) {
    EXPECT_EQ(p(6, c), m(5, c));
    EXPECT_EQ(p(7, c), m(5, c));
  }
  EXPECT_EQ(p(7, 7), m(5, 5));
}

TEST(PadTest, NextPowersOfTwo) {
  const ChannelPlane p = pad_to_pow2(Matrix<double>(5, 9));
  EXPECT_EQ(p.rows(), 8u);
  EXPECT_EQ(p.cols(), 16u);
  EXPECT_EQ(p.orig_rows, 5u);
  EXPECT_EQ(p.orig_cols, 9u);
  const ChannelPlane q = pad_to_pow2(Matrix<double>(5, 9), 16);
  EXPECT_EQ(q.rows(), 16u);
  EXPECT_EQ(q.cols(), 16u);
}

TEST(PadTest, CropRecoversInputForRandomShapes) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> dim(1, 70);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix<double> m(dim(rng), dim(rng));
    for (double& v : m.values()) v = uni(rng);
    const ChannelPlane p = pad_to_pow2(m);
    ASSERT_TRUE(is_pow2(p.rows()));
    ASSERT_TRUE(is_pow2(p.cols()));
    EXPECT_EQ(crop(p, p.orig_rows, p.orig_cols).values, m);
  }
}

TEST(PpmTest, RoundTripIsExactOnEightBitGrid) {
  RasterImage img(3, 5);
  for (std::size_t i = 0; i < img.samples().size(); ++i)
    img.samples()[i] = static_cast<double>((i * 37) % 256) / 255.0;
  std::stringstream ss;
  write_ppm(ss, img);
  const RasterImage back = read_ppm(ss);
  ASSERT_EQ(back.rows(), 3u);
  ASSERT_EQ(back.cols(), 5u);
  for (std::size_t i = 0; i < img.samples().size(); ++i)
    EXPECT_DOUBLE_EQ(back.samples()[i], img.samples()[i]);
}

TEST(PpmTest, RejectsGarbage) {
  std::stringstream ss("P3\n1 1\n255\n0 0 0\n");
  EXPECT_THROW(read_ppm(ss), IoError);
  std::stringstream trunc("P6\n4 4\n255\nabc");
  EXPECT_THROW(read_ppm(trunc), IoError);
}
