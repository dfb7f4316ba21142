#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "ajpeg/error.hpp"
#include "ajpeg/matrix.hpp"

namespace ajpeg {

inline constexpr std::size_t kBlock = 8;
inline constexpr std::size_t kBlockArea = kBlock * kBlock;

/// 8x8 real block, row-major, frequency (0,0) first.
using Block8 = std::array<double, kBlockArea>;

/// 8x8 quantization divisors, row-major.
using QuantMatrix = std::array<int, kBlockArea>;

// clang-format off
inline constexpr QuantMatrix kJpegQuant = {
    16, 11, 10, 16,  24,  40,  51,  61,
    12, 12, 14, 19,  26,  58,  60,  55,
    14, 13, 16, 24,  40,  57,  69,  56,
    14, 17, 22, 29,  51,  87,  80,  62,
    18, 22, 37, 56,  68, 109, 103,  77,
    24, 35, 55, 64,  81, 104, 113,  92,
    49, 64, 78, 87, 103, 121, 120, 101,
    72, 92, 95, 98, 112, 100, 103,  99,
};
// clang-format on

/// Quantized coefficients of one element, row-major 8x8.
struct CoeffBlock {
  std::array<std::int32_t, kBlockArea> values{};

  std::int32_t& operator()(std::size_t r, std::size_t c) noexcept { return values[r * kBlock + c]; }
  std::int32_t operator()(std::size_t r, std::size_t c) const noexcept {
    return values[r * kBlock + c];
  }
  friend bool operator==(const CoeffBlock&, const CoeffBlock&) = default;
};

// Quantization runs on 8-bit sample units with the usual JPEG level shift;
// planes themselves stay in [0,1].
inline constexpr double kSampleGain = 255.0;
inline constexpr double kLevelShift = 128.0;

/// Orthonormal DCT-II basis: row i holds s_i cos((2k+1) i pi / 2n).
/// Cached per size; the returned reference stays valid for the program's lifetime.
inline const Matrix<double>& cosine_basis(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<const Matrix<double>>> cache;
  std::scoped_lock lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    Matrix<double> m(n, n);
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double s = i == 0 ? std::sqrt(1.0 / dn) : std::sqrt(2.0 / dn);
      for (std::size_t k = 0; k < n; ++k)
        m(i, k) = s * std::cos(std::numbers::pi * (2.0 * k + 1.0) * i / (2.0 * dn));
    }
    slot = std::make_unique<const Matrix<double>>(std::move(m));
  }
  return *slot;
}

namespace detail {

// out(i, j) = sum_{r,c} basis_h(i, r) x(r, c) basis_w(j, c) for i < ni, j < nj.
inline Matrix<double> forward_partial(MatrixView<double> x, std::size_t ni, std::size_t nj) {
  const auto& bh = cosine_basis(x.rows);
  const auto& bw = cosine_basis(x.cols);
  Matrix<double> t(x.rows, nj);
  for (std::size_t r = 0; r < x.rows; ++r) {
    const double* xr = x.data + r * x.stride;
    for (std::size_t j = 0; j < nj; ++j) {
      const double* b = bw.row(j).data();
      double acc = 0.0;
      for (std::size_t c = 0; c < x.cols; ++c) acc += xr[c] * b[c];
      t(r, j) = acc;
    }
  }
  Matrix<double> out(ni, nj);
  for (std::size_t i = 0; i < ni; ++i) {
    double* o = out.row(i).data();
    for (std::size_t r = 0; r < x.rows; ++r) {
      const double h = bh(i, r);
      const double* tr = t.row(r).data();
      for (std::size_t j = 0; j < nj; ++j) o[j] += h * tr[j];
    }
  }
  return out;
}

// Inverse of forward_partial for coefficients supported on the top-left
// coeff.rows() x coeff.cols() corner of an rows x cols spectrum.
inline Matrix<double> inverse_partial(MatrixView<double> coeff, std::size_t rows,
                                      std::size_t cols) {
  const auto& bh = cosine_basis(rows);
  const auto& bw = cosine_basis(cols);
  Matrix<double> t(coeff.rows, cols);
  for (std::size_t i = 0; i < coeff.rows; ++i) {
    double* tr = t.row(i).data();
    for (std::size_t j = 0; j < coeff.cols; ++j) {
      const double a = coeff(i, j);
      if (a == 0.0) continue;
      const double* b = bw.row(j).data();
      for (std::size_t c = 0; c < cols; ++c) tr[c] += a * b[c];
    }
  }
  Matrix<double> out(rows, cols);
  for (std::size_t i = 0; i < coeff.rows; ++i) {
    const double* tr = t.row(i).data();
    const double* b = bh.row(i).data();
    for (std::size_t r = 0; r < rows; ++r) {
      const double h = b[r];
      double* o = out.row(r).data();
      for (std::size_t c = 0; c < cols; ++c) o[c] += h * tr[c];
    }
  }
  return out;
}

inline void require_block_size(std::size_t rows, std::size_t cols, const char* who) {
  if (rows < kBlock || cols < kBlock)
    throw InvalidArgument(std::string(who) + ": element smaller than 8x8 (" +
                          std::to_string(rows) + "x" + std::to_string(cols) + ")");
}

} // namespace detail

/// Orthonormal 2D DCT-II, computed by separable row and column passes.
inline Matrix<double> dct2(MatrixView<double> x) {
  if (x.rows == 0 || x.cols == 0) throw InvalidArgument("dct2: empty block");
  return detail::forward_partial(x, x.rows, x.cols);
}

inline Matrix<double> idct2(MatrixView<double> coeff) {
  if (coeff.rows == 0 || coeff.cols == 0) throw InvalidArgument("idct2: empty block");
  return detail::inverse_partial(coeff, coeff.rows, coeff.cols);
}

/// Top-left 8x8 frequencies of a coefficient matrix.
inline Block8 tl_restrict(MatrixView<double> coeff) {
  detail::require_block_size(coeff.rows, coeff.cols, "tl_restrict");
  Block8 out{};
  for (std::size_t i = 0; i < kBlock; ++i)
    for (std::size_t j = 0; j < kBlock; ++j) out[i * kBlock + j] = coeff(i, j);
  return out;
}

/// Zero-padded rows x cols coefficient matrix holding m in its top-left corner.
inline Matrix<double> tl_embed(const Block8& m, std::size_t rows, std::size_t cols) {
  detail::require_block_size(rows, cols, "tl_embed");
  Matrix<double> out(rows, cols);
  for (std::size_t i = 0; i < kBlock; ++i)
    for (std::size_t j = 0; j < kBlock; ++j) out(i, j) = m[i * kBlock + j];
  return out;
}

/// TL(DCT(x)) without forming the full spectrum.
inline Block8 tl_coefficients(MatrixView<double> x) {
  detail::require_block_size(x.rows, x.cols, "tl_coefficients");
  const Matrix<double> c = detail::forward_partial(x, kBlock, kBlock);
  Block8 out{};
  std::copy(c.data(), c.data() + kBlockArea, out.begin());
  return out;
}

/// IDCT(TL^{-1}(m)) on a rows x cols element.
inline Matrix<double> synthesize_tl(const Block8& m, std::size_t rows, std::size_t cols) {
  detail::require_block_size(rows, cols, "synthesize_tl");
  return detail::inverse_partial(MatrixView<double>(m.data(), kBlock, kBlock, kBlock), rows, cols);
}

/// Entrywise round-half-away-from-zero of c8 ./ q.
inline CoeffBlock quantize(const Block8& c8, const QuantMatrix& q = kJpegQuant) {
  CoeffBlock out;
  for (std::size_t k = 0; k < kBlockArea; ++k)
    out.values[k] = static_cast<std::int32_t>(std::round(c8[k] / q[k]));
  return out;
}

inline Block8 dequantize(const CoeffBlock& f, const QuantMatrix& q = kJpegQuant) {
  Block8 out{};
  for (std::size_t k = 0; k < kBlockArea; ++k) out[k] = static_cast<double>(f.values[k]) * q[k];
  return out;
}

/// Pixels of the element reproduced from its 8x8 lowest frequencies, unquantized.
inline Matrix<double> approx_block_unquantized(MatrixView<double> x) {
  return synthesize_tl(tl_coefficients(x), x.rows, x.cols);
}

/// Quantized coefficients F(R) of an element with samples in [0,1].
inline CoeffBlock encode_block(MatrixView<double> x, const QuantMatrix& q = kJpegQuant) {
  Block8 c = tl_coefficients(x);
  for (double& v : c) v *= kSampleGain;
  // A constant shift only moves the DC coefficient, by shift * sqrt(rows * cols).
  c[0] -= kLevelShift * std::sqrt(static_cast<double>(x.rows * x.cols));
  return quantize(c, q);
}

/// Samples of a rows x cols element reconstructed from F(R); may leave [0,1].
inline Matrix<double> decode_block(const CoeffBlock& f, std::size_t rows, std::size_t cols,
                                   const QuantMatrix& q = kJpegQuant) {
  Block8 c = dequantize(f, q);
  c[0] += kLevelShift * std::sqrt(static_cast<double>(rows * cols));
  for (double& v : c) v /= kSampleGain;
  return synthesize_tl(c, rows, cols);
}

/// Pixels of the element after the full quantization round trip.
inline Matrix<double> approx_block_final(MatrixView<double> x, const QuantMatrix& q = kJpegQuant) {
  return decode_block(encode_block(x, q), x.rows, x.cols, q);
}

} // namespace ajpeg
