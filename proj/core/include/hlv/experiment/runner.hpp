#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "hlv/cartography/alignment.hpp"
#include "hlv/cartography/data_map.hpp"
#include "hlv/data/corpus_manifest.hpp"
#include "hlv/eval/report.hpp"
#include "hlv/experiment/config.hpp"

namespace hlv::experiment {

struct SeedFailure {
  std::int64_t seed = 0;
  std::string error;
};

struct RunResult {
  std::filesystem::path directory;
  eval::EvaluationReport report;
  std::vector<cartography::DataMapPoint> data_map;
  cartography::AlignmentReport alignment;
  std::vector<SeedFailure> failures;
  /// Relative paths of every file listed in manifest.json.
  std::vector<std::string> files;
};

using ProgressFn = std::function<void(std::string_view)>;

/// Trains one model per seed and writes, under config.output_dir:
///   config.json, seed-<s>/{dynamics_train.jsonl,history.csv,model.bin},
///   report.csv, report.json, data_map.csv, jsd_series.csv, alignment.csv,
///   manifest.json (config hash and SHA-256 of every other file).
/// The data map pools the last 5 epochs of every successful seed.
/// A seed that throws is recorded in the manifest and skipped; the run throws
/// only if every seed fails. Configuration problems throw before any training.
RunResult run(const ExperimentConfig& config, const ProgressFn& progress = {});

/// Same, with an already loaded corpus (annotations in the config are still merged).
RunResult run(const ExperimentConfig& config, data::CuratedCorpus corpus, const ProgressFn& progress = {});

/// Normalization constants for a corpus: MNIST or Mukhoti constants by source,
/// fitted on the training split otherwise.
data::Normalization default_normalization(const data::CuratedCorpus& corpus);

}  // namespace hlv::experiment
