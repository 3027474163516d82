#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hlv/annotation/aggregate.hpp"
#include "hlv/data/regions.hpp"
#include "hlv/data/sample.hpp"

namespace hlv::data {

struct CuratedSample {
  ImageSample sample;
  std::size_t index = 0;
  Region region = Region::Unfiltered;
  std::optional<annotation::ImageLabelSet> labels;
};

/// Curated corpus file. Each sample object carries the datasheet keys
/// images, original_labels, indices, file_name, human_uncert_mean,
/// pct_ann_unsure, soft_label_yes_unc_equal, soft_label, soft_label_argmax,
/// split, source, plus id, region and n_annotators. Label-derived keys are
/// null until annotations are merged.
struct CuratedCorpus {
  std::string name;
  std::vector<CuratedSample> samples;

  bool fully_annotated() const;
  std::vector<const CuratedSample*> in_split(Split split) const;

  /// Attaches label sets by sample id; returns how many samples received labels.
  std::size_t merge_labels(const std::map<std::string, annotation::ImageLabelSet>& labels);

  std::string to_json() const;
  static CuratedCorpus from_json(std::string_view text);
  void save(const std::filesystem::path& path) const;
  static CuratedCorpus load(const std::filesystem::path& path);
};

}  // namespace hlv::data
