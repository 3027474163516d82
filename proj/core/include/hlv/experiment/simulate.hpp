#pragma once

#include <span>
#include <string>
#include <vector>

#include "hlv/annotation/record.hpp"
#include "hlv/experiment/config.hpp"

namespace hlv::experiment {

struct ReferenceItem {
  std::string image_id;
  Distribution q{};  // what the crowd perceives, over 11 classes
};

/// For every image: draw an annotator count from the model's histogram; each
/// annotator perceives c ~ q (a uniform digit with probability noise_rate),
/// answers Yes on c and, for every other digit j, Unsure with probability
/// min(1, q_j / unsure_threshold), else No. A perceived NaN class yields all No.
/// Image i uses a generator derived from (seed, i), so output is a pure
/// function of the inputs.
std::vector<annotation::AnnotationRecord> simulate_annotations(std::span<const ReferenceItem> items,
                                                               const SimAnnotatorModel& model);

}  // namespace hlv::experiment
