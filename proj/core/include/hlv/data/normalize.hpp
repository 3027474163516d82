#pragma once

#include <span>

#include "hlv/data/sample.hpp"
#include "hlv/nn/layers.hpp"

namespace hlv::data {

struct Normalization {
  double mean = 0.0;
  double std = 1.0;
};

inline constexpr Normalization kMnistNormalization{0.1325, 0.3101};
inline constexpr Normalization kMukhotiNormalization{0.0976, 0.2427};

/// Global pixel mean and population standard deviation over a set of samples.
Normalization fit_normalization(std::span<const ImageSample> samples);

/// One row per sample, each pixel mapped to (x - mean) / std. Throws if std <= 0.
nn::Matrix normalize(std::span<const ImageSample> samples, Normalization norm);

}  // namespace hlv::data
