#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "ajpeg/image.hpp"
#include "ajpeg/matrix.hpp"

namespace ajpeg::analysis {

/// Standard normal samples by Box-Muller over mt19937_64. Both engine and
/// transform are fully specified, so a seed reproduces the same stream on
/// every standard library.
class GaussianSource {
public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 == 0.0);
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64& engine() noexcept { return engine_; }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct NoiseModel {
  double epsilon = 0.0;
  std::uint64_t seed = 1;
};

/// Adds epsilon * N(0,1) to every entry, without clamping.
inline void add_noise_inplace(Matrix<double>& m, double epsilon, GaussianSource& gauss) {
  for (double& v : m.values()) v += epsilon * gauss();
}

/// Per-sample additive Gaussian noise; the result is clamped into [0,1].
inline RasterImage add_noise(const RasterImage& img, const NoiseModel& model) {
  RasterImage out = img;
  if (model.epsilon == 0.0) return out;
  GaussianSource gauss(model.seed);
  for (double& v : out.samples()) v = std::clamp(v + model.epsilon * gauss(), 0.0, 1.0);
  return out;
}

} // namespace ajpeg::analysis
