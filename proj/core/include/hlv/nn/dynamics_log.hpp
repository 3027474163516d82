#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hlv/common/types.hpp"

namespace hlv::nn {

/// Model state on one training sample at the end of one epoch of one seeded run.
struct DynamicsFrame {
  std::int64_t seed = 0;
  std::size_t epoch = 0;  // 1-based
  std::string sample_id;
  double p_target = 0.0;  // predicted mass on the training target's argmax class
  Distribution pred{};
};

struct DynamicsLog {
  std::vector<DynamicsFrame> frames;

  std::size_t epoch_count() const;

  /// One JSON object per line: {"seed","epoch","sample_id","p_target","pred"}.
  std::string to_jsonl() const;
  void write_jsonl(const std::filesystem::path& path) const;
  static DynamicsLog from_jsonl(std::string_view text);
  static DynamicsLog read_jsonl(const std::filesystem::path& path);
};

}  // namespace hlv::nn
