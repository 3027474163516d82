#include "hlv/data/normalize.hpp"

#include <cmath>
#include <stdexcept>

namespace hlv::data {

Normalization fit_normalization(std::span<const ImageSample> samples) {
  if (samples.empty()) throw std::invalid_argument("fit_normalization: no samples");
  double sum = 0.0;
  for (const auto& s : samples) {
    for (float p : s.pixels) sum += p;
  }
  const double n = static_cast<double>(samples.size() * kNumPixels);
  const double mean = sum / n;
  double sq = 0.0;
  for (const auto& s : samples) {
    for (float p : s.pixels) sq += (p - mean) * (p - mean);
  }
  return {mean, std::sqrt(sq / n)};
}

nn::Matrix normalize(std::span<const ImageSample> samples, Normalization norm) {
  if (!(norm.std > 0.0)) throw std::invalid_argument("normalize: std must be positive");
  nn::Matrix out(static_cast<Eigen::Index>(samples.size()), static_cast<Eigen::Index>(kNumPixels));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double* row = out.row(static_cast<Eigen::Index>(i)).data();
    for (std::size_t k = 0; k < kNumPixels; ++k) row[k] = (static_cast<double>(samples[i].pixels[k]) - norm.mean) / norm.std;
  }
  return out;
}

}  // namespace hlv::data
