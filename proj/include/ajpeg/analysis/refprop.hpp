#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "ajpeg/analysis/noise.hpp"
#include "ajpeg/error.hpp"
#include "ajpeg/estimator.hpp"
#include "ajpeg/matrix.hpp"
#include "ajpeg/transform.hpp"

namespace ajpeg::analysis {

/// Both sides of the refinement property for one element.
struct RefinementSides {
  double eta_parent = 0.0;         ///< eta(R)
  double children_sum_sq = 0.0;    ///< sum of eta(R_i)^2
};

/// eta(R) and sum eta(R_i)^2 of an element, with the L2 weight of a frame
/// of `frame_area` pixels.
inline RefinementSides refinement_sides(MatrixView<double> x, double frame_area) {
  if (x.rows < 16 || x.cols < 16 || x.rows % 2 != 0 || x.cols % 2 != 0)
    throw InvalidArgument("refinement_sides: element must be at least 16x16");
  const ErrorNorm norm{NormKind::L2, 1, 1};
  RefinementSides s;
  s.eta_parent = norm.element_error(x) / std::sqrt(frame_area);
  const std::size_t h = x.rows / 2;
  const std::size_t w = x.cols / 2;
  for (std::size_t r0 : {std::size_t{0}, h})
    for (std::size_t c0 : {std::size_t{0}, w}) {
      const double e = norm.element_error(x.sub(r0, c0, h, w));
      s.children_sum_sq += e * e / frame_area;
    }
  return s;
}

/// The single-coefficient counterexample: a 32x32 element whose spectrum is
/// zero except for frequency (5,5) of the given amplitude. An odd frequency
/// matters: even ones restrict to the halves as exact child basis functions.
inline Matrix<double> single_coefficient_element(double amplitude = 15.0, std::size_t size = 32,
                                                 std::size_t freq = 5) {
  Matrix<double> spec(size, size);
  spec(freq, freq) = amplitude;
  return idct2(spec);
}

struct MonteCarloReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double max_ratio = 0.0; ///< largest sum eta_i^2 / eta^2 observed

  [[nodiscard]] double rate() const noexcept {
    return trials == 0 ? 0.0 : static_cast<double>(violations) / static_cast<double>(trials);
  }
};

/// Normalizes the element to unit Euclidean norm, perturbs it with
/// epsilon * N(0,1) per pixel, and counts trials violating
/// sum eta(R_i)^2 <= c0 * eta(R)^2.
inline MonteCarloReport monte_carlo_refprop(MatrixView<double> element, double epsilon, double c0,
                                            std::size_t trials, std::uint64_t seed) {
  Matrix<double> base = copy_of(element);
  double norm2 = 0.0;
  for (double v : base.values()) norm2 += v * v;
  if (norm2 > 0.0) {
    const double s = 1.0 / std::sqrt(norm2);
    for (double& v : base.values()) v *= s;
  }
  GaussianSource gauss(seed);
  MonteCarloReport rep;
  Matrix<double> trial(base.rows(), base.cols());
  for (std::size_t t = 0; t < trials; ++t) {
    trial = base;
    add_noise_inplace(trial, epsilon, gauss);
    const RefinementSides s = refinement_sides(trial, 1.0);
    const double parent_sq = s.eta_parent * s.eta_parent;
    ++rep.trials;
    if (s.children_sum_sq > c0 * parent_sq) ++rep.violations;
    if (parent_sq > 0.0) rep.max_ratio = std::max(rep.max_ratio, s.children_sum_sq / parent_sq);
  }
  return rep;
}

} // namespace ajpeg::analysis
