#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hlv/data/sample.hpp"

namespace hlv::data {

struct GrayImage {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> pixels;
};

/// Decodes any PNG to 8-bit grayscale.
GrayImage decode_png(std::string_view bytes);

/// Encodes a 28x28 sample as an 8-bit grayscale PNG.
std::string encode_png(const Pixels& pixels);

}  // namespace hlv::data
