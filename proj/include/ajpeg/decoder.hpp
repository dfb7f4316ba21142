#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "ajpeg/bitstream.hpp"
#include "ajpeg/error.hpp"
#include "ajpeg/image.hpp"
#include "ajpeg/mesh.hpp"
#include "ajpeg/transform.hpp"

namespace ajpeg {

/// Pixel position, compared lexicographically (row, then column).
using Pixel = std::pair<std::uint32_t, std::uint32_t>;

/// Occupied pixels as disjoint, merged [begin, end) column intervals per row.
class RowIntervals {
public:
  RowIntervals(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  [[nodiscard]] std::size_t rows() const noexcept { return rows_.size(); }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  [[nodiscard]] bool occupied(std::uint32_t r, std::uint32_t c) const {
    const auto& row = rows_[r];
    auto it = row.upper_bound(c);
    if (it == row.begin()) return false;
    --it;
    return c < it->second;
  }

  /// True when no pixel of [c0, c1) in row r is occupied.
  [[nodiscard]] bool span_free(std::uint32_t r, std::uint32_t c0, std::uint32_t c1) const {
    const auto& row = rows_[r];
    auto it = row.lower_bound(c0);
    if (it != row.end() && it->first < c1) return false;
    if (it == row.begin()) return true;
    --it;
    return it->second <= c0;
  }

  void occupy(std::uint32_t r, std::uint32_t c0, std::uint32_t c1) {
    auto& row = rows_[r];
    auto next = row.lower_bound(c0);
    if (next != row.begin()) {
      auto prev = std::prev(next);
      if (prev->second == c0) {
        c0 = prev->first;
        row.erase(prev);
      }
    }
    next = row.find(c1);
    if (next != row.end()) {
      c1 = next->second;
      row.erase(next);
    }
    row.emplace(c0, c1);
  }

private:
  std::size_t cols_;
  std::vector<std::map<std::uint32_t, std::uint32_t>> rows_;
};

/// Occupancy plus the candidate set for the lexicographically minimal empty
/// pixel. Candidates sit right of each placed element's top-right pixel and
/// below its bottom-left pixel.
class PlacementState {
public:
  PlacementState(std::size_t rows, std::size_t cols) : occ_(rows, cols) {
    candidates_.insert({0, 0});
  }

  [[nodiscard]] const RowIntervals& occupancy() const noexcept { return occ_; }
  [[nodiscard]] const std::set<Pixel>& candidates() const noexcept { return candidates_; }

  /// Minimal empty pixel, or nullopt when the frame is full. Drops stale
  /// candidates that have been covered since insertion.
  std::optional<Pixel> next_empty() {
    while (!candidates_.empty()) {
      const Pixel p = *candidates_.begin();
      if (!occ_.occupied(p.first, p.second)) return p;
      candidates_.erase(candidates_.begin());
    }
    return std::nullopt;
  }

  /// Places a rows x cols element with top-left at p.
  void place(Pixel p, std::uint32_t rows, std::uint32_t cols) {
    const auto [r, c] = p;
    if (r + rows > occ_.rows() || c + cols > occ_.cols())
      throw CorruptStream("element exceeds channel bounds");
    for (std::uint32_t k = 0; k < rows; ++k)
      if (!occ_.span_free(r + k, c, c + cols)) throw CorruptStream("element overlaps placed pixels");
    for (std::uint32_t k = 0; k < rows; ++k) occ_.occupy(r + k, c, c + cols);
    candidate_update(p, rows, cols);
  }

private:
  void candidate_update(Pixel p, std::uint32_t rows, std::uint32_t cols) {
    candidates_.erase(p);
    if (p.second + cols < occ_.cols()) candidates_.insert({p.first, p.second + cols});
    if (p.first + rows < occ_.rows()) candidates_.insert({p.first + rows, p.second});
  }

  RowIntervals occ_;
  std::set<Pixel> candidates_;
};

/// Rebuilds one channel from its ordered records. Positions are recovered by
/// always placing the next record at the minimal empty pixel. When
/// `placements` is non-null it receives the recovered elements.
inline ChannelPlane reconstruct_channel(std::span<const ElementRecord> records, std::size_t rows,
                                        std::size_t cols, std::vector<Element>* placements = nullptr,
                                        const QuantMatrix& q = kJpegQuant) {
  if (!is_pow2(rows) || !is_pow2(cols) || rows < kBlock || cols < kBlock)
    throw InvalidArgument("reconstruct_channel: dimensions must be powers of two, at least 8");
  ChannelPlane plane(rows, cols);
  PlacementState state(rows, cols);
  const std::uint8_t deepest = max_level(rows, cols);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const ElementRecord& rec = records[i];
    const auto where = state.next_empty();
    if (!where) throw CorruptStream("record " + std::to_string(i) + ": channel already full");
    if (rec.level > deepest) throw CorruptStream("record " + std::to_string(i) + ": invalid level");
    const auto h = static_cast<std::uint32_t>(rows >> rec.level);
    const auto w = static_cast<std::uint32_t>(cols >> rec.level);
    try {
      state.place(*where, h, w);
    } catch (const CorruptStream& e) {
      throw CorruptStream("record " + std::to_string(i) + ": " + e.what());
    }
    const Matrix<double> block = decode_block(expand_coeffs(rec.coeffs), h, w, q);
    paste(plane.values, where->first, where->second, MatrixView<double>(block));
    if (placements) placements->push_back(Element{where->first, where->second, h, w, rec.level});
  }
  if (state.next_empty())
    throw CorruptStream("records exhausted with empty pixels remaining");
  return plane;
}

struct DecodedPlanes {
  std::array<ChannelPlane, kChannels> planes; ///< padded Y, Cb, Cr
  std::array<std::vector<Element>, kChannels> placements;
};

inline DecodedPlanes decode_planes(const CompressedImage& c) {
  DecodedPlanes out;
  for (std::size_t ch = 0; ch < kChannels; ++ch) {
    try {
      out.planes[ch] = reconstruct_channel(c.channels[ch], c.channel_rows(ch), c.channel_cols(ch),
                                           &out.placements[ch]);
    } catch (const CorruptStream& e) {
      throw CorruptStream(std::string("channel ") + kChannelNames[ch] + ": " + e.what());
    }
  }
  return out;
}

/// Chroma upsampling, color conversion and cropping of decoded planes.
inline RasterImage assemble_image(const CompressedImage& c, const DecodedPlanes& d) {
  const ChannelPlane cb = upsample_chroma(d.planes[1], c.rows, c.cols);
  const ChannelPlane cr = upsample_chroma(d.planes[2], c.rows, c.cols);
  return crop(ycbcr_to_rgb(d.planes[0], cb, cr), c.orig_rows, c.orig_cols);
}

inline RasterImage decode(const CompressedImage& c) { return assemble_image(c, decode_planes(c)); }

inline RasterImage decode(std::span<const std::uint8_t> bytes) { return decode(deserialize(bytes)); }

} // namespace ajpeg
