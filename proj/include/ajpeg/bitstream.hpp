#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ajpeg/error.hpp"
#include "ajpeg/estimator.hpp"
#include "ajpeg/image.hpp"
#include "ajpeg/transform.hpp"

namespace ajpeg {

// ---------------------------------------------------------------------------
// Coefficient enumeration
// ---------------------------------------------------------------------------

namespace detail {

// Anti-diagonals by increasing row + col; each one walked from its
// bottom-left entry up to its top-right entry.
constexpr std::array<std::uint8_t, kBlockArea> make_diagonal_order() {
  std::array<std::uint8_t, kBlockArea> order{};
  std::size_t n = 0;
  for (std::size_t d = 0; d < 2 * kBlock - 1; ++d) {
    const std::size_t r_hi = d < kBlock ? d : kBlock - 1;
    const std::size_t r_lo = d < kBlock ? 0 : d - (kBlock - 1);
    for (std::size_t r = r_hi + 1; r-- > r_lo;)
      order[n++] = static_cast<std::uint8_t>(r * kBlock + (d - r));
  }
  return order;
}

constexpr std::array<std::uint8_t, kBlockArea> invert(const std::array<std::uint8_t, kBlockArea>& o) {
  std::array<std::uint8_t, kBlockArea> inv{};
  for (std::size_t n = 0; n < kBlockArea; ++n) inv[o[n]] = static_cast<std::uint8_t>(n);
  return inv;
}

} // namespace detail

/// kScanOrder[n] is the row-major position of the n-th stored coefficient.
inline constexpr std::array<std::uint8_t, kBlockArea> kScanOrder = detail::make_diagonal_order();
/// kScanRank[pos] is the scan index of row-major position pos.
inline constexpr std::array<std::uint8_t, kBlockArea> kScanRank = detail::invert(kScanOrder);

/// 1-based scan number of the 1-based matrix position (i, j).
inline int zigzag_index(int i, int j) {
  if (i < 1 || i > 8 || j < 1 || j > 8)
    throw InvalidArgument("zigzag_index: position outside 1..8");
  return kScanRank[static_cast<std::size_t>((i - 1) * 8 + (j - 1))] + 1;
}

/// 1-based (i, j) of the 1-based scan number n.
inline std::pair<int, int> zigzag_position(int n) {
  if (n < 1 || n > 64) throw InvalidArgument("zigzag_position: index outside 1..64");
  const int pos = kScanOrder[static_cast<std::size_t>(n - 1)];
  return {pos / 8 + 1, pos % 8 + 1};
}

/// Scan-ordered coefficients up to and including the last nonzero one.
inline std::vector<std::int32_t> truncate_coeffs(const CoeffBlock& block) {
  std::vector<std::int32_t> out(kBlockArea);
  std::size_t len = 0;
  for (std::size_t n = 0; n < kBlockArea; ++n) {
    out[n] = block.values[kScanOrder[n]];
    if (out[n] != 0) len = n + 1;
  }
  out.resize(len);
  return out;
}

inline CoeffBlock expand_coeffs(std::span<const std::int32_t> coeffs) {
  if (coeffs.size() > kBlockArea) throw InvalidArgument("expand_coeffs: more than 64 entries");
  CoeffBlock out;
  for (std::size_t n = 0; n < coeffs.size(); ++n) out.values[kScanOrder[n]] = coeffs[n];
  return out;
}

// ---------------------------------------------------------------------------
// Varints and runlength stage
// ---------------------------------------------------------------------------

inline void put_uvarint(std::vector<std::uint8_t>& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(v));
}

inline std::uint64_t zigzag_encode(std::int64_t v) noexcept {
  return (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63);
}
inline std::int64_t zigzag_decode(std::uint64_t v) noexcept {
  return static_cast<std::int64_t>(v >> 1) ^ -static_cast<std::int64_t>(v & 1);
}

inline void put_svarint(std::vector<std::uint8_t>& out, std::int64_t v) {
  put_uvarint(out, zigzag_encode(v));
}

inline void put_u32be(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

/// Cursor over an input buffer; every read checks for truncation.
class ByteReader {
public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  [[nodiscard]] bool at_end() const noexcept { return pos_ == bytes_.size(); }
  [[nodiscard]] std::size_t position() const noexcept { return pos_; }

  std::uint8_t u8() {
    if (pos_ >= bytes_.size()) throw CorruptStream("unexpected end of stream");
    return bytes_[pos_++];
  }

  std::uint32_t u32be() {
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) v = (v << 8) | u8();
    return v;
  }

  std::uint64_t uvarint() {
    std::uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      const std::uint8_t b = u8();
      v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
      if ((b & 0x80) == 0) return v;
    }
    throw CorruptStream("varint longer than 10 bytes");
  }

  std::int64_t svarint() { return zigzag_decode(uvarint()); }

private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

namespace detail {

inline void rle_append(std::vector<std::uint8_t>& out, std::span<const std::int32_t> values) {
  std::uint64_t run = 0;
  for (std::int32_t v : values) {
    if (v == 0) {
      ++run;
      continue;
    }
    put_uvarint(out, run);
    put_svarint(out, v);
    run = 0;
  }
  // Trailing zeros: the final pair carries an explicit zero value.
  if (run > 0) {
    put_uvarint(out, run - 1);
    put_svarint(out, 0);
  }
}

inline std::int32_t checked_i32(std::int64_t v) {
  if (v < INT32_MIN || v > INT32_MAX) throw CorruptStream("coefficient exceeds 32-bit range");
  return static_cast<std::int32_t>(v);
}

// Reads (run, value) pairs until exactly `count` integers are produced.
inline std::vector<std::int32_t> rle_read(ByteReader& in, std::size_t count) {
  std::vector<std::int32_t> out;
  out.reserve(count);
  while (out.size() < count) {
    const std::uint64_t run = in.uvarint();
    if (run >= count - out.size()) throw CorruptStream("zero run overflows coefficient count");
    out.insert(out.end(), run, 0);
    out.push_back(checked_i32(in.svarint()));
  }
  return out;
}

} // namespace detail

/// (zero run, value) pairs as unsigned and zigzag-signed varints.
inline std::vector<std::uint8_t> rle_encode(std::span<const std::int32_t> values) {
  std::vector<std::uint8_t> out;
  detail::rle_append(out, values);
  return out;
}

inline std::vector<std::int32_t> rle_decode(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  std::vector<std::int32_t> out;
  while (!in.at_end()) {
    const std::uint64_t run = in.uvarint();
    if (run > (1u << 24)) throw CorruptStream("rle_decode: implausible zero run");
    out.insert(out.end(), run, 0);
    out.push_back(detail::checked_i32(in.svarint()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Compressed image container
// ---------------------------------------------------------------------------

struct ElementRecord {
  std::uint8_t level = 0;            ///< element width = channel width >> level
  std::vector<std::int32_t> coeffs;  ///< scan order, last entry nonzero

  friend bool operator==(const ElementRecord&, const ElementRecord&) = default;
};

inline constexpr std::array<char, 4> kMagic = {'A', 'J', 'P', 'G'};
inline constexpr std::uint8_t kFormatVersion = 1;
inline constexpr std::size_t kChannels = 3;
inline constexpr std::array<const char*, kChannels> kChannelNames = {"Y", "Cb", "Cr"};

/// Parsed storage vector: header plus per-channel records in lexicographic
/// element order. rows/cols are the padded luma dimensions; chroma channels
/// are half size in each direction.
struct CompressedImage {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::uint32_t orig_rows = 0;
  std::uint32_t orig_cols = 0;
  NormKind norm = NormKind::L2;
  std::array<std::vector<ElementRecord>, kChannels> channels;

  [[nodiscard]] std::size_t channel_rows(std::size_t ch) const noexcept {
    return ch == 0 ? rows : rows / 2;
  }
  [[nodiscard]] std::size_t channel_cols(std::size_t ch) const noexcept {
    return ch == 0 ? cols : cols / 2;
  }

  friend bool operator==(const CompressedImage&, const CompressedImage&) = default;
};

inline std::string record_label(std::size_t ch, std::size_t index) {
  return std::string("channel ") + kChannelNames[ch] + " record " + std::to_string(index);
}

/// Largest level whose elements are still at least 8 pixels on each side.
inline std::uint8_t max_level(std::size_t rows, std::size_t cols) noexcept {
  std::uint8_t lvl = 0;
  while ((rows >> (lvl + 1)) >= kBlock && (cols >> (lvl + 1)) >= kBlock) ++lvl;
  return lvl;
}

inline void validate_header(const CompressedImage& c) {
  if (!is_pow2(c.rows) || !is_pow2(c.cols) || c.rows < 2 * kBlock || c.cols < 2 * kBlock)
    throw CorruptStream("padded dimensions must be powers of two and at least 16");
  if (c.orig_rows == 0 || c.orig_cols == 0 || c.orig_rows > c.rows || c.orig_cols > c.cols)
    throw CorruptStream("original dimensions inconsistent with padded dimensions");
  if (c.norm != NormKind::L2 && c.norm != NormKind::BV) throw CorruptStream("unknown norm selector");
}

inline void validate_record(const ElementRecord& rec, std::size_t ch_rows, std::size_t ch_cols,
                            const std::string& label) {
  if (rec.level > max_level(ch_rows, ch_cols))
    throw CorruptStream(label + ": invalid level " + std::to_string(rec.level));
  if (rec.coeffs.size() > kBlockArea) throw CorruptStream(label + ": more than 64 coefficients");
  if (!rec.coeffs.empty() && rec.coeffs.back() == 0)
    throw CorruptStream(label + ": coefficient list ends in zero");
}

inline std::vector<std::uint8_t> serialize(const CompressedImage& c) {
  validate_header(c);
  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  out.push_back(kFormatVersion);
  put_u32be(out, c.rows);
  put_u32be(out, c.cols);
  put_u32be(out, c.orig_rows);
  put_u32be(out, c.orig_cols);
  out.push_back(static_cast<std::uint8_t>(c.norm));
  for (std::size_t ch = 0; ch < kChannels; ++ch) {
    const auto& recs = c.channels[ch];
    put_u32be(out, static_cast<std::uint32_t>(recs.size()));
    for (std::size_t i = 0; i < recs.size(); ++i) {
      validate_record(recs[i], c.channel_rows(ch), c.channel_cols(ch), record_label(ch, i));
      out.push_back(recs[i].level);
      put_uvarint(out, recs[i].coeffs.size());
      detail::rle_append(out, recs[i].coeffs);
    }
  }
  return out;
}

inline CompressedImage deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  CompressedImage c;
  try {
    for (char m : kMagic)
      if (in.u8() != static_cast<std::uint8_t>(m)) throw CorruptStream("bad magic");
    if (in.u8() != kFormatVersion) throw CorruptStream("unsupported format version");
    c.rows = in.u32be();
    c.cols = in.u32be();
    c.orig_rows = in.u32be();
    c.orig_cols = in.u32be();
    c.norm = static_cast<NormKind>(in.u8());
  } catch (const CorruptStream& e) {
    throw CorruptStream(std::string("header: ") + e.what());
  }
  validate_header(c);
  for (std::size_t ch = 0; ch < kChannels; ++ch) {
    const std::size_t ch_rows = c.channel_rows(ch);
    const std::size_t ch_cols = c.channel_cols(ch);
    std::uint32_t count = 0;
    try {
      count = in.u32be();
    } catch (const CorruptStream& e) {
      throw CorruptStream(std::string("channel ") + kChannelNames[ch] + " count: " + e.what());
    }
    if (count == 0 || count > (ch_rows / kBlock) * (ch_cols / kBlock))
      throw CorruptStream(std::string("channel ") + kChannelNames[ch] + ": implausible record count " +
                          std::to_string(count));
    auto& recs = c.channels[ch];
    recs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      const std::string label = record_label(ch, i);
      ElementRecord rec;
      try {
        rec.level = in.u8();
        const std::uint64_t n = in.uvarint();
        if (n > kBlockArea) throw CorruptStream("more than 64 coefficients");
        rec.coeffs = detail::rle_read(in, static_cast<std::size_t>(n));
      } catch (const CorruptStream& e) {
        throw CorruptStream(label + ": " + e.what());
      }
      validate_record(rec, ch_rows, ch_cols, label);
      recs.push_back(std::move(rec));
    }
  }
  if (!in.at_end()) throw CorruptStream("trailing bytes after last record");
  return c;
}

} // namespace ajpeg
