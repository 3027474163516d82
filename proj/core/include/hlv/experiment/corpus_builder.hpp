#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hlv/data/corpus_manifest.hpp"
#include "hlv/data/dedup.hpp"
#include "hlv/data/normalize.hpp"
#include "hlv/data/regions.hpp"
#include "hlv/data/split.hpp"

namespace hlv::experiment {

struct CorpusBuildConfig {
  std::string name = "curated";
  data::CartographyThresholds thresholds = data::CartographyThresholds::mnist();
  data::Normalization normalization = data::kMnistNormalization;
  data::SplitRatios ratios = data::SplitRatios::from_counts(2131, 457, 457);
  std::size_t min_easy_per_class = 0;
  /// Keep a region/digit-stratified subsample of this many curated samples.
  std::optional<std::size_t> target_size;
  std::size_t probe_batch_size = 16;
  double probe_learning_rate = 1e-3;
  std::uint64_t seed = 0;
};

struct CorpusBuildResult {
  data::CuratedCorpus corpus;
  data::DedupReport dedup;
  std::vector<data::RegionAssignment> regions;  // every deduplicated sample, before filtering
};

/// Deduplicates, trains a SimpleFFN probe for the thresholds' horizon on the
/// original targets, assigns regions, drops unfiltered samples, optionally
/// subsamples, and splits. `audit_against` is only used for the leakage report.
CorpusBuildResult build_corpus(std::span<const data::ImageSample> samples, const CorpusBuildConfig& config,
                               std::span<const data::ImageSample> audit_against = {});

}  // namespace hlv::experiment
