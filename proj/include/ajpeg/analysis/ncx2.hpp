#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "ajpeg/error.hpp"

namespace ajpeg::analysis {

/// Central chi-squared cdf with k degrees of freedom.
inline double chi2_cdf(double k, double x) {
  if (!(k > 0.0) || x < 0.0) throw InvalidArgument("chi2_cdf: need k > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(0.5 * k, 0.5 * x);
}

/// Central chi-squared upper tail 1 - cdf, accurate for tiny tails.
inline double chi2_sf(double k, double x) {
  if (!(k > 0.0) || x < 0.0) throw InvalidArgument("chi2_sf: need k > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(0.5 * k, 0.5 * x);
}

namespace detail {

// Poisson(lambda/2) mixture of central chi-squared tails with k + 2j degrees
// of freedom, summed outward from the Poisson mode. Each direction stops once
// a geometric bound on the remaining mass falls below 1e-17 of the sum.
inline double ncx2_mixture(double k, double lambda, double x, bool upper) {
  const double half = 0.5 * lambda;
  const double y = 0.5 * x;
  const double a0 = 0.5 * k;
  auto tail = [&](double j) {
    return upper ? boost::math::gamma_q(a0 + j, y) : boost::math::gamma_p(a0 + j, y);
  };
  constexpr double rel = 1e-17;
  constexpr double floor_abs = 1e-300;

  // Poisson weights by recurrence from the mode; the mode weight e^-m m^j / j!
  // is the derivative of the regularized gamma function.
  const double mode = std::floor(half);
  const double w_mode = boost::math::gamma_p_derivative(mode + 1.0, half);
  double sum = 0.0;

  // Upward: weights shrink by half / (j + 1); the upper tail grows with j
  // (bounded by 1), the lower tail shrinks.
  double w = w_mode;
  for (double j = mode;; j += 1.0) {
    const double t = tail(j);
    sum += w * t;
    const double r = half / (j + 1.0);
    if (r < 1.0) {
      const double rest = (upper ? w : w * t) * r / (1.0 - r);
      if (rest <= rel * sum || rest < floor_abs) break;
    }
    w *= r;
  }
  // Downward: weights shrink by j / half; the upper tail shrinks, the lower
  // tail grows (bounded by 1).
  w = w_mode;
  for (double j = mode - 1.0; j >= 0.0; j -= 1.0) {
    w *= (j + 1.0) / half;
    const double t = tail(j);
    sum += w * t;
    const double r = j / half;
    if (r < 1.0) {
      const double rest = (upper ? w * t : w) * r / (1.0 - r);
      if (rest <= rel * sum || rest < floor_abs) break;
    }
  }
  return std::min(sum, 1.0);
}

inline void check_ncx2_args(double k, double lambda, double x, const char* who) {
  if (!(k > 0.0) || lambda < 0.0 || x < 0.0 || std::isnan(lambda) || std::isnan(x))
    throw InvalidArgument(std::string(who) + ": need k > 0, lambda >= 0, x >= 0");
}

} // namespace detail

/// Non-central chi-squared cdf Phi_{k,lambda}(x).
inline double ncx2_cdf(double k, double lambda, double x) {
  detail::check_ncx2_args(k, lambda, x, "ncx2_cdf");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (lambda == 0.0) return chi2_cdf(k, x);
  return detail::ncx2_mixture(k, lambda, x, false);
}

/// 1 - Phi_{k,lambda}(x), summed directly so small upper tails keep their
/// relative accuracy.
inline double ncx2_sf(double k, double lambda, double x) {
  detail::check_ncx2_args(k, lambda, x, "ncx2_sf");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (lambda == 0.0) return chi2_sf(k, x);
  return detail::ncx2_mixture(k, lambda, x, true);
}

struct MonotonicityReport {
  bool nonincreasing = true;
  double max_increase = 0.0; ///< largest Phi(lambda_{i+1}) - Phi(lambda_i) seen
  std::vector<double> values;
};

/// Evaluates Phi_{k,lambda}(x) along an ascending lambda grid and checks that
/// it never increases by more than `slack`.
inline MonotonicityReport check_lambda_monotonicity(double k, double x, std::span<const double> lambdas,
                                                   double slack = 1e-12) {
  MonotonicityReport rep;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (i > 0 && lambdas[i] < lambdas[i - 1])
      throw InvalidArgument("check_lambda_monotonicity: lambda grid must be ascending");
    rep.values.push_back(ncx2_cdf(k, lambdas[i], x));
    if (i > 0) {
      const double inc = rep.values[i] - rep.values[i - 1];
      rep.max_increase = std::max(rep.max_increase, inc);
      if (inc > slack) rep.nonincreasing = false;
    }
  }
  return rep;
}

} // namespace ajpeg::analysis
