#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

#include "ajpeg/error.hpp"
#include "ajpeg/image.hpp"

namespace ajpeg {

struct Metrics {
  double weighted_l2 = 0.0; ///< sqrt(sum of squared RGB errors / (h w))
  double bv = 0.0;          ///< (L1 + interior jumps) / (h w), summed over channels
  double psnr = std::numeric_limits<double>::infinity(); ///< peak 1.0, over all samples
};

inline double psnr_from_mse(double mse) noexcept {
  return mse == 0.0 ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(1.0 / mse);
}

inline Metrics compare(const RasterImage& a, const RasterImage& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidArgument("compare: image dimensions differ");
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const double area = static_cast<double>(rows * cols);
  double sq = 0.0;
  double l1 = 0.0;
  double jumps = 0.0;
  auto err = [&](std::size_t r, std::size_t c, std::size_t ch) { return a.at(r, c, ch) - b.at(r, c, ch); };
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      for (std::size_t ch = 0; ch < 3; ++ch) {
        const double e = err(r, c, ch);
        sq += e * e;
        l1 += std::abs(e);
        if (c + 1 < cols) jumps += std::abs(e - err(r, c + 1, ch));
        if (r + 1 < rows) jumps += std::abs(e - err(r + 1, c, ch));
      }
  Metrics m;
  m.weighted_l2 = std::sqrt(sq / area);
  m.bv = (l1 + jumps) / area;
  m.psnr = psnr_from_mse(sq / (3.0 * area));
  return m;
}

/// PSNR between two planes of equal size (peak 1.0).
inline double plane_psnr(const ChannelPlane& a, const ChannelPlane& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidArgument("plane_psnr: plane dimensions differ");
  double sq = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const double e = a(r, c) - b(r, c);
      sq += e * e;
    }
  return psnr_from_mse(sq / static_cast<double>(a.rows() * a.cols()));
}

} // namespace ajpeg
