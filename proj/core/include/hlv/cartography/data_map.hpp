#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hlv/nn/dynamics_log.hpp"

namespace hlv::cartography {

struct EpochWindow {
  std::size_t first = 1;  // inclusive, 1-based
  std::size_t last = 1;   // inclusive
};

struct DataMapPoint {
  std::string sample_id;
  double confidence = 0.0;
  double variability = 0.0;
  double correctness = 0.0;
  std::vector<std::int64_t> seeds;
  EpochWindow window;
};

/// Pools every (seed, epoch) frame in the window for each sample and reports
/// mean p_target (confidence), its population std (variability) and the share of
/// frames whose prediction argmax equals `target_class[sample]` (correctness).
/// Samples without a target class are skipped. Result is sorted by sample id.
/// Throws naming the first missing (seed, epoch, sample) frame.
std::vector<DataMapPoint> data_map(const nn::DynamicsLog& log, const std::vector<std::int64_t>& seeds,
                                   EpochWindow window, const std::map<std::string, std::size_t>& target_class);

/// The last `n` epochs of a run with `epochs` epochs.
EpochWindow last_epochs(std::size_t epochs, std::size_t n);

}  // namespace hlv::cartography
