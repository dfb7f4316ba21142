#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <string>

#include "ajpeg/error.hpp"
#include "ajpeg/matrix.hpp"

namespace ajpeg {

/// RGB raster with interleaved samples in [0,1].
class RasterImage {
public:
  RasterImage() = default;
  RasterImage(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), samples_(rows * cols * 3, fill) {
    if (rows == 0 || cols == 0) throw InvalidArgument("RasterImage: empty dimensions");
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  double& at(std::size_t r, std::size_t c, std::size_t ch) noexcept {
    return samples_[(r * cols_ + c) * 3 + ch];
  }
  double at(std::size_t r, std::size_t c, std::size_t ch) const noexcept {
    return samples_[(r * cols_ + c) * 3 + ch];
  }
  void set(std::size_t r, std::size_t c, double red, double green, double blue) noexcept {
    double* p = &samples_[(r * cols_ + c) * 3];
    p[0] = red;
    p[1] = green;
    p[2] = blue;
  }

  std::span<const double> samples() const noexcept { return samples_; }
  std::span<double> samples() noexcept { return samples_; }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> samples_;
};

/// One color component. After padding, rows() and cols() are powers of two and
/// orig_rows/orig_cols remember the visible extent.
struct ChannelPlane {
  Matrix<double> values;
  std::size_t orig_rows = 0;
  std::size_t orig_cols = 0;

  ChannelPlane() = default;
  explicit ChannelPlane(Matrix<double> v)
      : values(std::move(v)), orig_rows(values.rows()), orig_cols(values.cols()) {}
  ChannelPlane(std::size_t rows, std::size_t cols, double fill = 0.0)
      : ChannelPlane(Matrix<double>(rows, cols, fill)) {}

  [[nodiscard]] std::size_t rows() const noexcept { return values.rows(); }
  [[nodiscard]] std::size_t cols() const noexcept { return values.cols(); }
  double& operator()(std::size_t r, std::size_t c) noexcept { return values(r, c); }
  double operator()(std::size_t r, std::size_t c) const noexcept { return values(r, c); }

  friend bool operator==(const ChannelPlane&, const ChannelPlane&) = default;
};

struct ColorTriple {
  double y = 0.0;
  double cb = 0.5;
  double cr = 0.5;
};

struct YCbCrPlanes {
  ChannelPlane y;
  ChannelPlane cb;
  ChannelPlane cr;
};

// Full-range ITU-R BT.601.
inline constexpr double kLumaR = 0.299;
inline constexpr double kLumaG = 0.587;
inline constexpr double kLumaB = 0.114;
inline constexpr double kCbScale = 2.0 * (1.0 - kLumaB); // 1.772
inline constexpr double kCrScale = 2.0 * (1.0 - kLumaR); // 1.402

inline ColorTriple rgb_to_ycbcr(double r, double g, double b) noexcept {
  const double y = kLumaR * r + kLumaG * g + kLumaB * b;
  return {y, 0.5 + (b - y) / kCbScale, 0.5 + (r - y) / kCrScale};
}

/// Inverse of rgb_to_ycbcr without clamping.
inline std::array<double, 3> ycbcr_to_rgb_unclamped(const ColorTriple& c) noexcept {
  const double r = c.y + kCrScale * (c.cr - 0.5);
  const double b = c.y + kCbScale * (c.cb - 0.5);
  const double g = (c.y - kLumaR * r - kLumaB * b) / kLumaG;
  return {r, g, b};
}

inline YCbCrPlanes rgb_to_ycbcr(const RasterImage& img) {
  YCbCrPlanes out{ChannelPlane(img.rows(), img.cols()), ChannelPlane(img.rows(), img.cols()),
                  ChannelPlane(img.rows(), img.cols())};
  for (std::size_t r = 0; r < img.rows(); ++r) {
    for (std::size_t c = 0; c < img.cols(); ++c) {
      const ColorTriple t = rgb_to_ycbcr(img.at(r, c, 0), img.at(r, c, 1), img.at(r, c, 2));
      out.y(r, c) = t.y;
      out.cb(r, c) = t.cb;
      out.cr(r, c) = t.cr;
    }
  }
  return out;
}

/// Output samples are clamped into [0,1].
inline RasterImage ycbcr_to_rgb(const ChannelPlane& y, const ChannelPlane& cb,
                                const ChannelPlane& cr) {
  if (y.rows() != cb.rows() || y.rows() != cr.rows() || y.cols() != cb.cols() ||
      y.cols() != cr.cols())
    throw InvalidArgument("ycbcr_to_rgb: plane dimensions differ");
  RasterImage img(y.rows(), y.cols());
  for (std::size_t r = 0; r < y.rows(); ++r) {
    for (std::size_t c = 0; c < y.cols(); ++c) {
      const auto rgb = ycbcr_to_rgb_unclamped({y(r, c), cb(r, c), cr(r, c)});
      img.set(r, c, std::clamp(rgb[0], 0.0, 1.0), std::clamp(rgb[1], 0.0, 1.0),
              std::clamp(rgb[2], 0.0, 1.0));
    }
  }
  return img;
}

/// Halves both dimensions by averaging 2x2 blocks.
inline ChannelPlane downsample_chroma(const ChannelPlane& p) {
  if (p.rows() % 2 != 0 || p.cols() % 2 != 0)
    throw InvalidArgument("downsample_chroma: odd plane dimension " + std::to_string(p.rows()) +
                          "x" + std::to_string(p.cols()));
  ChannelPlane out(p.rows() / 2, p.cols() / 2);
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = 0; c < out.cols(); ++c)
      out(r, c) = 0.25 * ((p(2 * r, 2 * c) + p(2 * r, 2 * c + 1)) +
                          (p(2 * r + 1, 2 * c) + p(2 * r + 1, 2 * c + 1)));
  out.orig_rows = (p.orig_rows + 1) / 2;
  out.orig_cols = (p.orig_cols + 1) / 2;
  return out;
}

/// Doubles both dimensions by pixel replication.
inline ChannelPlane upsample_chroma(const ChannelPlane& p) {
  ChannelPlane out(p.rows() * 2, p.cols() * 2);
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = p(r / 2, c / 2);
  out.orig_rows = p.orig_rows * 2;
  out.orig_cols = p.orig_cols * 2;
  return out;
}

/// Replicating upsample that must land exactly on a target frame.
inline ChannelPlane upsample_chroma(const ChannelPlane& p, std::size_t target_rows,
                                    std::size_t target_cols) {
  if (p.rows() * 2 != target_rows || p.cols() * 2 != target_cols)
    throw InvalidArgument("upsample_chroma: " + std::to_string(p.rows()) + "x" +
                          std::to_string(p.cols()) + " does not double to " +
                          std::to_string(target_rows) + "x" + std::to_string(target_cols));
  return upsample_chroma(p);
}

/// Grows each dimension to the next power of two (and at least min_dim) by
/// replicating the last row and column. Records the original extent.
inline ChannelPlane pad_to_pow2(const Matrix<double>& raw, std::size_t min_dim = 1) {
  if (raw.empty()) throw InvalidArgument("pad_to_pow2: empty plane");
  const std::size_t rows = std::bit_ceil(std::max(raw.rows(), min_dim));
  const std::size_t cols = std::bit_ceil(std::max(raw.cols(), min_dim));
  ChannelPlane out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t sr = std::min(r, raw.rows() - 1);
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = raw(sr, std::min(c, raw.cols() - 1));
  }
  out.orig_rows = raw.rows();
  out.orig_cols = raw.cols();
  return out;
}

inline ChannelPlane pad_to_pow2(const ChannelPlane& p, std::size_t min_dim = 1) {
  return pad_to_pow2(p.values, min_dim);
}

/// Top-left rows x cols window of a plane.
inline ChannelPlane crop(const ChannelPlane& p, std::size_t rows, std::size_t cols) {
  if (rows > p.rows() || cols > p.cols()) throw InvalidArgument("crop: window exceeds plane");
  return ChannelPlane(copy_of(MatrixView<double>(p.values).sub(0, 0, rows, cols)));
}

inline RasterImage crop(const RasterImage& img, std::size_t rows, std::size_t cols) {
  if (rows > img.rows() || cols > img.cols()) throw InvalidArgument("crop: window exceeds image");
  RasterImage out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      out.set(r, c, img.at(r, c, 0), img.at(r, c, 1), img.at(r, c, 2));
  return out;
}

inline bool is_pow2(std::size_t n) noexcept { return std::has_single_bit(n); }

} // namespace ajpeg
