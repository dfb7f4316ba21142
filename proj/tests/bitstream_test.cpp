#include <random>

#include <gtest/gtest.h>

#include "ajpeg/bitstream.hpp"

using namespace ajpeg;

TEST(ScanOrderTest, FullTable) {
  const int table[8][8] = {
      {1, 3, 6, 10, 15, 21, 28, 36},  {2, 5, 9, 14, 20, 27, 35, 43},
      {4, 8, 13, 19, 26, 34, 42, 49}, {7, 12, 18, 25, 33, 41, 48, 54},
      {11, 17, 24, 32, 40, 47, 53, 58}, {16, 23, 31, 39, 46, 52, 57, 61},
      {22, 30, 38, 45, 51, 56, 60, 63}, {29, 37, 44, 50, 55, 59, 62, 64},
  };
  for (int i = 1; i <= 8; ++i)
    for (int j = 1; j <= 8; ++j) {
      EXPECT_EQ(zigzag_index(i, j), table[i - 1][j - 1]) << i << "," << j;
      EXPECT_EQ(zigzag_position(table[i - 1][j - 1]), std::make_pair(i, j));
    }
}

TEST(ScanOrderTest, Bijection) {
  std::array<int, 64> seen{};
  for (std::size_t n = 0; n < 64; ++n) {
    ++seen[kScanOrder[n]];
    EXPECT_EQ(kScanRank[kScanOrder[n]], n);
  }
  for (int s : seen) EXPECT_EQ(s, 1);
  EXPECT_THROW(zigzag_index(0, 1), InvalidArgument);
  EXPECT_THROW(zigzag_index(1, 9), InvalidArgument);
  EXPECT_THROW(zigzag_position(65), InvalidArgument);
}

TEST(TruncateTest, DropsTrailingZeros) {
  CoeffBlock b;
  b.values[0] = 1;       // (1,1)
  b.values[1 * 8] = -2;  // (2,1)
  EXPECT_EQ(truncate_coeffs(b), (std::vector<std::int32_t>{1, -2}));
  EXPECT_TRUE(truncate_coeffs(CoeffBlock{}).empty());
  CoeffBlock last;
  last.values[63] = 4;
  const auto t = truncate_coeffs(last);
  ASSERT_EQ(t.size(), 64u);
  EXPECT_EQ(t.back(), 4);
}

TEST(TruncateTest, ExpandInverts) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> val(-3, 3);
  for (int t = 0; t < 500; ++t) {
    CoeffBlock b;
    for (auto& v : b.values) v = (rng() % 4 == 0) ? val(rng) : 0;
    const auto tr = truncate_coeffs(b);
    EXPECT_TRUE(tr.empty() || tr.back() != 0);
    EXPECT_EQ(expand_coeffs(tr).values, b.values);
  }
}

TEST(VarintTest, KnownEncodings) {
  std::vector<std::uint8_t> out;
  put_uvarint(out, 0);
  put_uvarint(out, 127);
  put_uvarint(out, 128);
  put_uvarint(out, 300);
  EXPECT_EQ(out, (std::vector<std::uint8_t>{0x00, 0x7f, 0x80, 0x01, 0xac, 0x02}));
  EXPECT_EQ(zigzag_encode(0), 0u);
  EXPECT_EQ(zigzag_encode(-1), 1u);
  EXPECT_EQ(zigzag_encode(1), 2u);
  EXPECT_EQ(zigzag_encode(-2), 3u);
  EXPECT_EQ(zigzag_decode(zigzag_encode(INT64_MIN)), INT64_MIN);
}

TEST(VarintTest, RoundTrip) {
  std::mt19937_64 rng(2);
  std::vector<std::uint8_t> out;
  std::vector<std::int64_t> vals;
  for (int t = 0; t < 2000; ++t) {
    const std::int64_t v = static_cast<std::int64_t>(rng()) >> (rng() % 63);
    vals.push_back(v);
    put_svarint(out, v);
  }
  ByteReader in(out);
  for (std::int64_t v : vals) EXPECT_EQ(in.svarint(), v);
  EXPECT_TRUE(in.at_end());
  EXPECT_THROW(in.u8(), CorruptStream);
}

TEST(VarintTest, OverlongRejected) {
  const std::vector<std::uint8_t> bad(11, 0x80);
  ByteReader in(bad);
  EXPECT_THROW(in.uvarint(), CorruptStream);
}

TEST(RleTest, KnownBytes) {
  const std::vector<std::int32_t> v{0, 0, 0, 5};
  EXPECT_EQ(rle_encode(v), (std::vector<std::uint8_t>{3, 10}));
  EXPECT_EQ(rle_decode(rle_encode(v)), v);
  const std::vector<std::int32_t> trail{7, 0, 0};
  EXPECT_EQ(rle_encode(trail), (std::vector<std::uint8_t>{0, 14, 1, 0}));
  EXPECT_EQ(rle_decode(rle_encode(trail)), trail);
  EXPECT_TRUE(rle_encode(std::vector<std::int32_t>{}).empty());
}

TEST(RleTest, RandomRoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> val(-2000, 2000);
  for (int t = 0; t < 1000; ++t) {
    std::vector<std::int32_t> v(rng() % 70);
    for (auto& x : v) x = rng() % 3 == 0 ? val(rng) : 0;
    EXPECT_EQ(rle_decode(rle_encode(v)), v);
  }
}

namespace {

CompressedImage sample_image() {
  CompressedImage c;
  c.rows = 32;
  c.cols = 64;
  c.orig_rows = 30;
  c.orig_cols = 50;
  c.norm = NormKind::BV;
  c.channels[0] = {ElementRecord{0, {12, -3, 0, 0, 1}}};
  c.channels[1] = {ElementRecord{1, {}}, ElementRecord{1, {-40}}, ElementRecord{1, {2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 9}},
                   ElementRecord{1, {100000}}};
  c.channels[2] = {ElementRecord{0, {5}}};
  return c;
}

} // namespace

TEST(ContainerTest, HeaderLayout) {
  const auto bytes = serialize(sample_image());
  ASSERT_GE(bytes.size(), 22u);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "AJPG");
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ((std::vector<std::uint8_t>(bytes.begin() + 5, bytes.begin() + 21)),
            (std::vector<std::uint8_t>{0, 0, 0, 32, 0, 0, 0, 64, 0, 0, 0, 30, 0, 0, 0, 50}));
  EXPECT_EQ(bytes[21], 1);
  // Y: count 1, level 0, 5 coefficients, pairs (0,12)(0,-3)(2,1)
  EXPECT_EQ((std::vector<std::uint8_t>(bytes.begin() + 22, bytes.begin() + 34)),
            (std::vector<std::uint8_t>{0, 0, 0, 1, 0, 5, 0, 24, 0, 5, 2, 2}));
}

TEST(ContainerTest, RoundTrip) {
  const CompressedImage c = sample_image();
  EXPECT_EQ(deserialize(serialize(c)), c);
}

TEST(ContainerTest, ChannelDimensions) {
  const CompressedImage c = sample_image();
  EXPECT_EQ(c.channel_rows(0), 32u);
  EXPECT_EQ(c.channel_cols(2), 32u);
  EXPECT_EQ(max_level(32, 64), 2);
  EXPECT_EQ(max_level(16, 32), 1);
  EXPECT_EQ(max_level(8, 8), 0);
}

TEST(ContainerTest, SerializeRejectsInvalidRecords) {
  CompressedImage c = sample_image();
  c.channels[0][0].coeffs.push_back(0);
  EXPECT_THROW(serialize(c), CorruptStream);
  c = sample_image();
  c.channels[1][0].level = 2; // 16x32 chroma frame allows level 1 at most
  EXPECT_THROW(serialize(c), CorruptStream);
  c = sample_image();
  c.rows = 48;
  EXPECT_THROW(serialize(c), CorruptStream);
}

TEST(ContainerTest, TruncationAlwaysDetected) {
  const auto bytes = serialize(sample_image());
  for (std::size_t n = 0; n < bytes.size(); ++n) {
    const std::vector<std::uint8_t> cut(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(n));
    EXPECT_THROW(deserialize(cut), CorruptStream) << n;
  }
}

TEST(ContainerTest, ErrorsNameTheRecord) {
  auto bytes = serialize(sample_image());
  bytes.resize(bytes.size() - 1); // chops the Cr record
  try {
    deserialize(bytes);
    FAIL();
  } catch (const CorruptStream& e) {
    EXPECT_NE(std::string(e.what()).find("channel Cr record 0"), std::string::npos) << e.what();
  }
}

TEST(ContainerTest, CorruptFieldsRejected) {
  const auto good = serialize(sample_image());
  auto bad = good;
  bad[0] = 'X';
  EXPECT_THROW(deserialize(bad), CorruptStream);
  bad = good;
  bad[4] = 2;
  EXPECT_THROW(deserialize(bad), CorruptStream);
  bad = good;
  bad[21] = 7;
  EXPECT_THROW(deserialize(bad), CorruptStream);
  bad = good;
  bad.push_back(0);
  EXPECT_THROW(deserialize(bad), CorruptStream);
  bad = good;
  bad[25] = 0; // Y record count 0
  EXPECT_THROW(deserialize(bad), CorruptStream);
  bad = good;
  bad[27] = 65; // coefficient count
  EXPECT_THROW(deserialize(bad), CorruptStream);
}

TEST(ContainerTest, RandomBytesNeverCrash) {
  std::mt19937_64 rng(4);
  const auto good = serialize(sample_image());
  int rejected = 0;
  for (int t = 0; t < 3000; ++t) {
    auto bytes = good;
    const int flips = 1 + static_cast<int>(rng() % 4);
    for (int f = 0; f < flips; ++f) bytes[rng() % bytes.size()] ^= static_cast<std::uint8_t>(1 + rng() % 255);
    try {
      (void)deserialize(bytes);
    } catch (const CorruptStream&) {
      ++rejected;
    }
  }
  EXPECT_GT(rejected, 0);
}
