#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "ajpeg/bitstream.hpp"
#include "ajpeg/decoder.hpp"
#include "ajpeg/estimator.hpp"
#include "ajpeg/image.hpp"
#include "ajpeg/mesh.hpp"
#include "ajpeg/parallel.hpp"
#include "ajpeg/refiner.hpp"

namespace ajpeg {

struct EncodeConfig {
  double tau = 0.01;                ///< luma tolerance
  std::optional<double> chroma_tau; ///< defaults to 2 * tau
  NormKind norm = NormKind::L2;

  [[nodiscard]] double tolerance(std::size_t ch) const {
    return ch == 0 ? tau : chroma_tau.value_or(2.0 * tau);
  }
};

struct EncodeResult {
  CompressedImage image;
  std::array<ChannelEncoding, kChannels> channels;
};

/// Y, Cb, Cr planes ready for refinement: luma padded to powers of two (at
/// least 16 per side), chroma padded to the same frame and then halved.
inline std::array<ChannelPlane, kChannels> prepare_planes(const RasterImage& img) {
  const YCbCrPlanes ycc = rgb_to_ycbcr(img);
  constexpr std::size_t min_luma = 2 * kBlock;
  return {pad_to_pow2(ycc.y, min_luma), downsample_chroma(pad_to_pow2(ycc.cb, min_luma)),
          downsample_chroma(pad_to_pow2(ycc.cr, min_luma))};
}

inline std::vector<ElementRecord> to_records(const ChannelEncoding& enc) {
  std::vector<ElementRecord> out;
  out.reserve(enc.leaves.size());
  for (std::size_t i = 0; i < enc.leaves.size(); ++i)
    out.push_back(ElementRecord{enc.leaves[i].level, truncate_coeffs(enc.blocks[i])});
  return out;
}

inline EncodeResult assemble(const RasterImage& img, const std::array<ChannelPlane, kChannels>& planes,
                             std::array<ChannelEncoding, kChannels> channels, NormKind norm) {
  EncodeResult out;
  out.image.rows = static_cast<std::uint32_t>(planes[0].rows());
  out.image.cols = static_cast<std::uint32_t>(planes[0].cols());
  out.image.orig_rows = static_cast<std::uint32_t>(img.rows());
  out.image.orig_cols = static_cast<std::uint32_t>(img.cols());
  out.image.norm = norm;
  for (std::size_t ch = 0; ch < kChannels; ++ch) out.image.channels[ch] = to_records(channels[ch]);
  out.channels = std::move(channels);
  return out;
}

/// Adaptive encoding; the three channels are refined concurrently.
inline EncodeResult encode(const RasterImage& img, const EncodeConfig& cfg) {
  if (!(cfg.tau > 0.0) || !(cfg.tolerance(1) > 0.0))
    throw InvalidArgument("encode: tolerance must be positive");
  const auto planes = prepare_planes(img);
  std::array<ChannelEncoding, kChannels> channels;
  parallel_for(kChannels, [&](std::size_t ch) {
    channels[ch] = run_adaptive(planes[ch], cfg.tolerance(ch), cfg.norm);
  });
  return assemble(img, planes, std::move(channels), cfg.norm);
}

/// Same pipeline on the finest uniform mesh (the fixed JPEG grid).
inline EncodeResult encode_uniform(const RasterImage& img, NormKind norm = NormKind::L2) {
  const auto planes = prepare_planes(img);
  std::array<ChannelEncoding, kChannels> channels;
  parallel_for(kChannels, [&](std::size_t ch) {
    channels[ch] = quantize_mesh(planes[ch], uniform_mesh(planes[ch].rows(), planes[ch].cols()), norm);
  });
  return assemble(img, planes, std::move(channels), norm);
}

inline std::vector<std::uint8_t> encode_bytes(const RasterImage& img, const EncodeConfig& cfg) {
  return serialize(encode(img, cfg).image);
}

} // namespace ajpeg
