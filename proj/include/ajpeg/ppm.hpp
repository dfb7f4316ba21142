#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "ajpeg/error.hpp"
#include "ajpeg/image.hpp"

namespace ajpeg {

namespace detail {

inline void skip_ppm_space(std::istream& in) {
  while (true) {
    const int ch = in.peek();
    if (ch == '#') {
      std::string comment;
      std::getline(in, comment);
    } else if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
      in.get();
    } else {
      return;
    }
  }
}

inline std::size_t read_ppm_int(std::istream& in) {
  skip_ppm_space(in);
  std::size_t v = 0;
  if (!(in >> v)) throw IoError("ppm: malformed header");
  return v;
}

} // namespace detail

inline std::uint8_t to_byte(double v) noexcept {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

/// Binary PPM (P6) or PGM (P5), 8-bit. Gray input is replicated into RGB.
inline RasterImage read_ppm(std::istream& in) {
  std::string magic(2, '\0');
  in.read(magic.data(), 2);
  if (!in || (magic != "P6" && magic != "P5")) throw IoError("ppm: expected P6 or P5 magic");
  const std::size_t channels = magic == "P6" ? 3 : 1;
  const std::size_t cols = detail::read_ppm_int(in);
  const std::size_t rows = detail::read_ppm_int(in);
  const std::size_t maxval = detail::read_ppm_int(in);
  if (rows == 0 || cols == 0) throw IoError("ppm: zero dimension");
  if (maxval == 0 || maxval > 255) throw IoError("ppm: only 8-bit samples are supported");
  in.get(); // single whitespace before raster
  std::vector<std::uint8_t> raw(rows * cols * channels);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) throw IoError("ppm: truncated raster");
  RasterImage img(rows, cols);
  const double scale = 1.0 / static_cast<double>(maxval);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    for (std::size_t ch = 0; ch < 3; ++ch)
      img.samples()[i * 3 + ch] = raw[i * channels + (channels == 3 ? ch : 0)] * scale;
  }
  return img;
}

inline RasterImage read_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return read_ppm(in);
}

inline void write_ppm(std::ostream& out, const RasterImage& img) {
  out << "P6\n" << img.cols() << ' ' << img.rows() << "\n255\n";
  std::vector<std::uint8_t> raw(img.samples().size());
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = to_byte(img.samples()[i]);
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
}

inline void write_ppm(const std::string& path, const RasterImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  write_ppm(out, img);
  if (!out) throw IoError("write failed: " + path);
}

/// Snap every sample to the 8-bit grid, as a PPM round trip would.
inline RasterImage quantize_8bit(RasterImage img) {
  for (double& v : img.samples()) v = to_byte(v) / 255.0;
  return img;
}

} // namespace ajpeg
