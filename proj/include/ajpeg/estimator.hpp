#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "ajpeg/error.hpp"
#include "ajpeg/matrix.hpp"
#include "ajpeg/transform.hpp"

namespace ajpeg {

enum class NormKind : std::uint8_t { L2 = 0, BV = 1 };

inline std::string_view to_string(NormKind k) noexcept { return k == NormKind::L2 ? "l2" : "bv"; }

inline NormKind parse_norm(std::string_view s) {
  if (s == "l2" || s == "L2") return NormKind::L2;
  if (s == "bv" || s == "BV") return NormKind::BV;
  throw InvalidArgument("unknown norm '" + std::string(s) + "' (expected l2 or bv)");
}

/// eta(R) = sqrt(sum (approx - exact)^2 / frame_area).
inline double local_error_l2(MatrixView<double> exact, MatrixView<double> approx,
                             double frame_area) {
  double acc = 0.0;
  for (std::size_t r = 0; r < exact.rows; ++r)
    for (std::size_t c = 0; c < exact.cols; ++c) {
      const double d = approx(r, c) - exact(r, c);
      acc += d * d;
    }
  return std::sqrt(acc / frame_area);
}

/// BV error of the element: L1 part plus the jumps across pixel interfaces
/// that lie inside the element, scaled by 1/frame_area.
inline double local_error_bv(MatrixView<double> exact, MatrixView<double> approx,
                             double frame_area) {
  double l1 = 0.0;
  double variation = 0.0;
  for (std::size_t r = 0; r < exact.rows; ++r) {
    for (std::size_t c = 0; c < exact.cols; ++c) {
      const double e = approx(r, c) - exact(r, c);
      l1 += std::abs(e);
      if (c + 1 < exact.cols) variation += std::abs(e - (approx(r, c + 1) - exact(r, c + 1)));
      if (r + 1 < exact.rows) variation += std::abs(e - (approx(r + 1, c) - exact(r + 1, c)));
    }
  }
  return (l1 + variation) / frame_area;
}

/// Local error functional bound to the frame of the channel being compressed.
struct ErrorNorm {
  NormKind kind = NormKind::L2;
  std::size_t frame_rows = 1;
  std::size_t frame_cols = 1;

  [[nodiscard]] double frame_area() const noexcept {
    return static_cast<double>(frame_rows) * static_cast<double>(frame_cols);
  }

  [[nodiscard]] double local(MatrixView<double> exact, MatrixView<double> approx) const {
    return kind == NormKind::L2 ? local_error_l2(exact, approx, frame_area())
                                : local_error_bv(exact, approx, frame_area());
  }

  /// eta(R) of the unquantized 8x8-frequency approximation on R.
  [[nodiscard]] double element_error(MatrixView<double> exact) const {
    const Matrix<double> approx = approx_block_unquantized(exact);
    return local(exact, approx);
  }
};

/// E(T) from the leaf errors: sqrt of the sum of squares (L2) or plain sum (BV).
inline double global_error(std::span<const double> leaf_errors, NormKind kind) noexcept {
  double acc = 0.0;
  for (double e : leaf_errors) acc += kind == NormKind::L2 ? e * e : e;
  return kind == NormKind::L2 ? std::sqrt(acc) : acc;
}

/// Shared modified error of four siblings:
/// eta~_child^2 = sum eta_i^2 / (eta^2 + eta~^2) * eta~^2, and 0 when the
/// parent has eta = eta~ = 0.
inline double modified_error_children(double eta_parent, double eta_tilde_parent,
                                      std::span<const double, 4> child_etas) noexcept {
  double num = 0.0;
  for (double e : child_etas) num += e * e;
  const double den = eta_parent * eta_parent + eta_tilde_parent * eta_tilde_parent;
  if (den == 0.0) return 0.0;
  return std::sqrt(num / den * (eta_tilde_parent * eta_tilde_parent));
}

} // namespace ajpeg
