#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "ajpeg/error.hpp"
#include "ajpeg/matrix.hpp"
#include "ajpeg/transform.hpp"

namespace ajpeg::analysis {

/// The operator coupling coarse and fine errors under refinement: project the
/// element onto its 8x8 lowest frequencies, restrict to each child, and keep
/// the child's frequencies outside its own 8x8 block. Output lives in the
/// children's coefficient space, laid out at the children's positions.
inline Matrix<double> apply_refinement_operator(MatrixView<double> x) {
  if (x.rows < 16 || x.cols < 16 || x.rows % 2 != 0 || x.cols % 2 != 0)
    throw InvalidArgument("refinement operator needs an element of at least 16x16");
  const Matrix<double> coarse = approx_block_unquantized(x);
  const std::size_t h = x.rows / 2;
  const std::size_t w = x.cols / 2;
  Matrix<double> out(x.rows, x.cols);
  for (std::size_t r0 : {std::size_t{0}, h}) {
    for (std::size_t c0 : {std::size_t{0}, w}) {
      Matrix<double> spec = dct2(MatrixView<double>(coarse).sub(r0, c0, h, w));
      for (std::size_t i = 0; i < kBlock; ++i)
        for (std::size_t j = 0; j < kBlock; ++j) spec(i, j) = 0.0;
      paste(out, r0, c0, MatrixView<double>(spec));
    }
  }
  return out;
}

/// Dense (rows*cols) x (rows*cols) matrix of the refinement operator, one
/// column per standard basis image. Limited to 64x64 elements.
inline Matrix<double> build_A_matrix(std::size_t rows, std::size_t cols) {
  if (rows < 16 || cols < 16) throw InvalidArgument("build_A_matrix: element must be at least 16x16");
  if (rows * cols > 4096) throw InvalidArgument("build_A_matrix: element too large for a dense matrix");
  const std::size_t n = rows * cols;
  Matrix<double> a(n, n);
  Matrix<double> e(rows, cols);
  for (std::size_t k = 0; k < n; ++k) {
    e.data()[k] = 1.0;
    const Matrix<double> col = apply_refinement_operator(e);
    for (std::size_t i = 0; i < n; ++i) a(i, k) = col.data()[i];
    e.data()[k] = 0.0;
  }
  return a;
}

/// The operator restricted to its 64-dimensional row space: column (i, j)
/// is A applied to the orthonormal DCT basis image of frequency (i, j).
/// Since A vanishes outside that space, this matrix has the same spectral norm.
inline Matrix<double> build_A_reduced(std::size_t rows, std::size_t cols) {
  if (rows < 16 || cols < 16) throw InvalidArgument("build_A_reduced: element must be at least 16x16");
  const std::size_t n = rows * cols;
  Matrix<double> a(n, kBlockArea);
  for (std::size_t k = 0; k < kBlockArea; ++k) {
    Block8 unit{};
    unit[k] = 1.0;
    const Matrix<double> basis = synthesize_tl(unit, rows, cols);
    const Matrix<double> col = apply_refinement_operator(basis);
    for (std::size_t i = 0; i < n; ++i) a(i, k) = col.data()[i];
  }
  return a;
}

struct PowerIterationResult {
  double sigma = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Largest singular value of m by power iteration on m^T m. Stops when the
/// Rayleigh quotient changes by at most rtol relative between iterations.
inline PowerIterationResult spectral_norm(const Matrix<double>& m, double rtol = 1e-14,
                                          std::size_t max_iter = 200000, std::uint64_t seed = 7) {
  const std::size_t n = m.rows();
  const std::size_t k = m.cols();
  if (n == 0 || k == 0) return {};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> v(k), mv(n);
  for (double& x : v) x = uni(rng);
  auto normalize = [](std::vector<double>& x) {
    double s = 0.0;
    for (double a : x) s += a * a;
    s = std::sqrt(s);
    if (s > 0.0)
      for (double& a : x) a /= s;
    return s;
  };
  normalize(v);
  PowerIterationResult res;
  double prev = -1.0;
  for (res.iterations = 1; res.iterations <= max_iter; ++res.iterations) {
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = m.row(i).data();
      double acc = 0.0;
      for (std::size_t j = 0; j < k; ++j) acc += row[j] * v[j];
      mv[i] = acc;
    }
    double rayleigh = 0.0;
    for (double a : mv) rayleigh += a * a;
    std::fill(v.begin(), v.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = m.row(i).data();
      for (std::size_t j = 0; j < k; ++j) v[j] += row[j] * mv[i];
    }
    if (normalize(v) == 0.0) {
      res.converged = true;
      break;
    }
    res.sigma = std::sqrt(rayleigh);
    if (prev >= 0.0 && std::abs(rayleigh - prev) <= rtol * rayleigh) {
      res.converged = true;
      break;
    }
    prev = rayleigh;
  }
  return res;
}

/// ||A|| for an element of the given size (0 for 16-pixel elements, whose
/// children are exactly represented by their 8x8 frequencies).
inline double operator_norm(std::size_t rows, std::size_t cols) {
  return spectral_norm(build_A_reduced(rows, cols)).sigma;
}

/// Size of the discarded frequency set of an element.
inline std::size_t rest_block_dof(std::size_t rows, std::size_t cols) {
  if (rows < kBlock || cols < kBlock) throw InvalidArgument("rest_block_dof: element smaller than 8x8");
  return rows * cols - kBlockArea;
}

} // namespace ajpeg::analysis
