#include "hlv/data/blend.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "hlv/common/rng.hpp"

namespace hlv::data {

std::vector<ImageSample> blend_ambiguous(std::span<const ImageSample> digits, const BlendConfig& config) {
  if (!(config.alpha_min >= 0.5 && config.alpha_min <= config.alpha_max && config.alpha_max <= 1.0)) {
    throw std::invalid_argument("blend: need 0.5 <= alpha_min <= alpha_max <= 1");
  }
  std::array<std::vector<std::size_t>, kNumDigits> by_digit;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const std::size_t d = original_digit(digits[i]);
    if (d < kNumDigits) by_digit[d].push_back(i);
  }
  for (std::size_t d = 0; d < kNumDigits; ++d) {
    if (by_digit[d].empty()) throw std::invalid_argument("blend: no source image for digit " + std::to_string(d));
  }

  Rng rng(derive_seed({config.seed, 0xB1E4DULL}));
  std::vector<ImageSample> out;
  out.reserve(config.count);
  for (std::size_t n = 0; n < config.count; ++n) {
    const std::size_t a = rng.index(kNumDigits);
    const ImageSample& base = digits[by_digit[a][rng.index(by_digit[a].size())]];
    ImageSample s;
    char id[32];
    std::snprintf(id, sizeof id, "%05zu", n);
    s.id = config.id_prefix + id;
    s.file_name = std::to_string(n) + ".png";
    s.source = Source::Other;
    if (rng.bernoulli(config.clean_fraction)) {
      s.pixels = base.pixels;
      s.original_target = one_hot(a);
    } else {
      std::size_t b = rng.index(kNumDigits - 1);
      if (b >= a) ++b;
      const ImageSample& other = digits[by_digit[b][rng.index(by_digit[b].size())]];
      const double alpha = rng.uniform(config.alpha_min, config.alpha_max);
      for (std::size_t k = 0; k < kNumPixels; ++k) {
        const double v = alpha * base.pixels[k] + (1.0 - alpha) * other.pixels[k];
        s.pixels[k] = static_cast<float>(std::round(std::clamp(v, 0.0, 1.0) * 255.0)) / 255.0f;
      }
      s.original_target = {};
      s.original_target[a] = alpha;
      s.original_target[b] = 1.0 - alpha;
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace hlv::data
