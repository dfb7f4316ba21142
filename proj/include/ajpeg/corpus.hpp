#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "ajpeg/analysis/noise.hpp"
#include "ajpeg/analysis/refprop.hpp"
#include "ajpeg/image.hpp"

namespace ajpeg {

struct CorpusImage {
  std::string name;
  RasterImage image;
};

namespace corpus {

inline RasterImage constant(std::size_t rows, std::size_t cols) {
  RasterImage img(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) img.set(r, c, 0.3, 0.5, 0.7);
  return img;
}

inline RasterImage gradient(std::size_t rows, std::size_t cols) {
  RasterImage img(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const double u = static_cast<double>(c) / static_cast<double>(cols - 1 + (cols == 1));
      const double v = static_cast<double>(r) / static_cast<double>(rows - 1 + (rows == 1));
      img.set(r, c, 0.1 + 0.8 * u, 0.2 + 0.6 * v, 0.9 - 0.5 * (u + v) / 2.0);
    }
  return img;
}

/// Low-frequency sinusoids: a few periods across the frame.
inline RasterImage sinusoid(std::size_t rows, std::size_t cols) {
  RasterImage img(rows, cols);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const double u = static_cast<double>(c) / static_cast<double>(cols);
      const double v = static_cast<double>(r) / static_cast<double>(rows);
      const double s = std::sin(two_pi * 1.5 * u) * std::cos(two_pi * 1.0 * v);
      const double t = std::cos(two_pi * (0.75 * u + 1.25 * v));
      img.set(r, c, 0.5 + 0.3 * s, 0.5 + 0.25 * t, 0.5 + 0.2 * s * t);
    }
  return img;
}

/// Piecewise-constant shapes on a flat background.
inline RasterImage cartoon(std::size_t rows, std::size_t cols) {
  RasterImage img(rows, cols);
  const double h = static_cast<double>(rows);
  const double w = static_cast<double>(cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const double y = static_cast<double>(r) / h;
      const double x = static_cast<double>(c) / w;
      double red = 0.85, green = 0.9, blue = 0.95;
      if ((x - 0.35) * (x - 0.35) + (y - 0.4) * (y - 0.4) < 0.04) {
        red = 0.9, green = 0.2, blue = 0.1;
      } else if (x > 0.55 && x < 0.9 && y > 0.55 && y < 0.85) {
        red = 0.1, green = 0.3, blue = 0.8;
      } else if (y > 0.9) {
        red = 0.2, green = 0.6, blue = 0.2;
      }
      img.set(r, c, red, green, blue);
    }
  return img;
}

/// I.i.d. Gaussian noise around mid-gray.
inline RasterImage noise(std::size_t rows, std::size_t cols, std::uint64_t seed = 2024,
                         double sigma = 0.15) {
  RasterImage img(rows, cols, 0.5);
  return analysis::add_noise(img, {sigma, seed});
}

/// Gray frame whose top-left 32x32 quadrant carries the single-coefficient
/// refinement counterexample (half amplitude, offset to mid-gray).
inline RasterImage single_coefficient(std::size_t rows = 64, std::size_t cols = 64) {
  RasterImage img(rows, cols, 0.5);
  const Matrix<double> pattern = analysis::single_coefficient_element(7.5);
  for (std::size_t r = 0; r < std::min<std::size_t>(32, rows); ++r)
    for (std::size_t c = 0; c < std::min<std::size_t>(32, cols); ++c) {
      const double g = 0.5 + pattern(r, c);
      img.set(r, c, g, g, g);
    }
  return img;
}

} // namespace corpus

/// The deterministic synthetic test set.
inline std::vector<CorpusImage> make_corpus(std::size_t size = 256) {
  return {
      {"constant", corpus::constant(size, size)},
      {"gradient", corpus::gradient(size, size)},
      {"sinusoid", corpus::sinusoid(size, size)},
      {"cartoon", corpus::cartoon(size, size)},
      {"noise", corpus::noise(size, size)},
      {"cartoon_odd", corpus::cartoon(size * 3 / 8 + 3, size * 5 / 8 + 1)},
      {"single_coefficient", corpus::single_coefficient()},
  };
}

} // namespace ajpeg
