#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hlv/data/sample.hpp"

namespace hlv::data {

/// Ambiguous-digit generator built from clean digits: a pixel-wise blend
/// alpha*A + (1-alpha)*B of two images with different labels, labelled with the
/// distribution {a: alpha, b: 1-alpha}. A `clean_fraction` of outputs are
/// unblended copies with their one-hot label. Pixels are quantized to 8 bits.
struct BlendConfig {
  std::size_t count = 0;
  double clean_fraction = 0.3;
  double alpha_min = 0.5;
  double alpha_max = 0.95;
  std::uint64_t seed = 0;
  std::string id_prefix = "blend-";
};

std::vector<ImageSample> blend_ambiguous(std::span<const ImageSample> digits, const BlendConfig& config);

}  // namespace hlv::data
