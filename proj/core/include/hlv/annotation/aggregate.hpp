#pragma once

#include <map>
#include <span>
#include <string>

#include "hlv/annotation/record.hpp"

namespace hlv::annotation {

enum class WeightScheme {
  Equal,     // Yes = 1, Unsure = 1
  Weighted,  // Yes = 1, Unsure = unsure_weight
};

struct AggregationConfig {
  double unsure_weight = 0.5;
  /// Denominator of the per-annotator unsure ratio (the ten selectable digits).
  double unsure_denominator = 10.0;
};

struct AnnotatorDistribution {
  Distribution probs{};
  double u = 0.0;
};

struct ImageLabelSet {
  Distribution soft_e{};
  Distribution soft_w{};
  Distribution maj_n{};
  double u_mean = 0.0;
  double u_prop = 0.0;
  std::size_t n_annotators = 0;
  bool hlv = false;
};

/// Per-annotator distribution over the 11 classes. A record with only "No"
/// answers puts all mass on the NaN class. Throws for excluded records.
AnnotatorDistribution annotator_distribution(const AnnotationRecord& record, WeightScheme scheme,
                                             const AggregationConfig& config = {});

/// One-hot at the argmax, ties to the lowest class index.
Distribution majority_label(const Distribution& soft);

/// Aggregates all records of one image. Excluded records are dropped first;
/// throws if none remain or records name different images.
ImageLabelSet aggregate_image(std::span<const AnnotationRecord> records, const AggregationConfig& config = {});

/// Groups records by image id and aggregates each group. Images whose records
/// are all excluded are skipped.
std::map<std::string, ImageLabelSet> aggregate_all(std::span<const AnnotationRecord> records,
                                                   const AggregationConfig& config = {});

}  // namespace hlv::annotation
