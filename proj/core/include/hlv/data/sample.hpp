#pragma once

#include <array>
#include <string>
#include <string_view>

#include "hlv/common/types.hpp"

namespace hlv::data {

enum class Source { Mnist, Mukhoti, Other };
enum class Split { Train, Val, Test, Unassigned };

std::string to_string(Source source);
std::string to_string(Split split);
Source parse_source(std::string_view text);
Split parse_split(std::string_view text);

/// Raw intensities in [0, 1], row-major 28x28.
using Pixels = std::array<float, kNumPixels>;

struct ImageSample {
  std::string id;
  Pixels pixels{};
  Source source = Source::Mnist;
  Split split = Split::Unassigned;
  /// One-hot for MNIST, distributional for synthetic sources. NaN mass is 0.
  Distribution original_target{};
  std::string file_name;
};

/// Throws std::invalid_argument if pixels leave [0,1] or the target is not normalized.
void validate(const ImageSample& sample);

/// Digit class of the original target (argmax, lowest index on ties).
inline std::size_t original_digit(const ImageSample& s) { return argmax(s.original_target); }

}  // namespace hlv::data
