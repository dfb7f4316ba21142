#pragma once

#include <cmath>
#include <cstddef>

#include "ajpeg/analysis/ncx2.hpp"
#include "ajpeg/error.hpp"

namespace ajpeg::analysis {

/// Inputs of the refinement-property probability bound.
struct ProbBoundParams {
  double epsilon = 0.0075; ///< noise amplitude relative to a unit-norm element
  double delta = 0.13;     ///< bound on the refinement operator norm
  double C = 1.0;          ///< refinement constant, C0 = 2 + 2C
  double z = 0.0;          ///< free split point, z >= 0
  double k_kept = 64.0;    ///< stored frequencies
  double k_rest = 448.0;   ///< smallest discarded frequency count of a refinable element
};

namespace detail {
inline void check_bound_params(const ProbBoundParams& p) {
  if (!(p.epsilon > 0.0)) throw InvalidArgument("probability bound: epsilon must be positive");
  if (!(p.delta > 0.0)) throw InvalidArgument("probability bound: delta must be positive");
  if (!(p.C > p.delta)) throw InvalidArgument("probability bound: requires C > delta");
  if (!(p.z >= 0.0)) throw InvalidArgument("probability bound: z must be nonnegative");
}
} // namespace detail

/// 1 - p_ref lower bound, i.e. an upper bound on the failure probability.
/// Evaluated as a + b - a b from the two small tails so that gaps far below
/// machine epsilon keep their precision.
inline double p_ref_failure_bound(const ProbBoundParams& p) {
  detail::check_bound_params(p);
  const double mu = (p.delta * p.delta) / (p.C * p.C);
  const double a = chi2_cdf(p.k_rest, mu * p.z / (1.0 - mu));
  const double b = ncx2_sf(p.k_kept, 1.0 / (p.epsilon * p.epsilon), p.z);
  return a + b - a * b;
}

/// (1 - Phi_{448,0}(delta^2 z / (C^2 - delta^2))) * Phi_{64, eps^-2}(z).
inline double p_ref_lower_bound(const ProbBoundParams& p) {
  detail::check_bound_params(p);
  const double mu = (p.delta * p.delta) / (p.C * p.C);
  return chi2_sf(p.k_rest, mu * p.z / (1.0 - mu)) *
         ncx2_cdf(p.k_kept, 1.0 / (p.epsilon * p.epsilon), p.z);
}

struct BoundOptimum {
  double z = 0.0;
  double failure = 1.0;     ///< 1 - bound at z
  double probability = 0.0; ///< bound at z
};

/// Best bound over z in [0, 10 (eps^-2 + k_kept)]: a coarse grid locates the
/// basin, golden-section search refines it.
inline BoundOptimum maximize_p_ref(ProbBoundParams p, std::size_t grid = 400) {
  p.z = 0.0;
  detail::check_bound_params(p);
  const double hi = 10.0 * (1.0 / (p.epsilon * p.epsilon) + p.k_kept);
  auto fail_at = [&](double z) {
    ProbBoundParams q = p;
    q.z = z;
    return p_ref_failure_bound(q);
  };
  const double step = hi / static_cast<double>(grid);
  std::size_t best = 0;
  double best_val = fail_at(0.0);
  for (std::size_t i = 1; i <= grid; ++i) {
    const double v = fail_at(step * static_cast<double>(i));
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = step * static_cast<double>(best == 0 ? 0 : best - 1);
  double b = step * static_cast<double>(std::min(best + 1, grid));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = fail_at(x1);
  double f2 = fail_at(x2);
  while (b - a > 1e-9 * std::max(1.0, b)) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = fail_at(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = fail_at(x2);
    }
  }
  BoundOptimum out;
  out.z = 0.5 * (a + b);
  out.failure = fail_at(out.z);
  if (best_val < out.failure) {
    out.z = step * static_cast<double>(best);
    out.failure = best_val;
  }
  ProbBoundParams q = p;
  q.z = out.z;
  out.probability = p_ref_lower_bound(q);
  return out;
}

} // namespace ajpeg::analysis
