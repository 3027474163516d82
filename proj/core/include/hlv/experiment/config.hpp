#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hlv/data/normalize.hpp"
#include "hlv/data/sample.hpp"
#include "hlv/eval/evaluate.hpp"
#include "hlv/nn/model.hpp"
#include "hlv/nn/trainer.hpp"

namespace hlv::experiment {

enum class LabelRegime { Orig, Synth, MajN, SoftW, SoftE };

std::string to_string(LabelRegime regime);
LabelRegime parse_regime(std::string_view text);

std::string to_string(nn::TrainRegime regime);
nn::TrainRegime parse_train_regime(std::string_view text);

inline const std::vector<std::int64_t> kDefaultSeeds{32, 12, 86, 10, 34, 99};

/// Simulated crowd used when no human annotations exist.
struct SimAnnotatorModel {
  /// annotator count -> relative frequency; counts must lie in [3, 10]
  std::map<std::size_t, double> count_weights{{3, 26}, {4, 341}, {5, 849}, {6, 2620},
                                              {7, 1399}, {8, 271}, {9, 14}, {10, 10}};
  double unsure_threshold = 0.3;
  double noise_rate = 0.05;
  std::uint64_t seed = 0;

  void validate() const;
};

struct ExperimentConfig {
  std::string name = "experiment";
  /// Dataset label used in report rows, e.g. "mnist".
  std::string dataset = "mnist";
  std::filesystem::path corpus;
  /// Annotation JSONL merged into the corpus before training, if given.
  std::optional<std::filesystem::path> annotations;
  std::optional<data::Normalization> normalization;  // default from the corpus source
  LabelRegime label_regime = LabelRegime::SoftW;
  nn::ModelArch arch{nn::ArchKind::LeNet};
  nn::TrainConfig training;
  std::vector<std::int64_t> seeds = kDefaultSeeds;
  std::vector<eval::EvalTarget> eval_sets{eval::EvalTarget::Orig, eval::EvalTarget::NewSoftW};
  std::filesystem::path output_dir = "out";
  std::size_t workers = 1;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
  /// Canonical JSON with a stable key order.
  std::string to_json() const;
  static ExperimentConfig from_json(std::string_view text, const std::filesystem::path& base_dir = {});
  static ExperimentConfig load(const std::filesystem::path& path);
  /// SHA-256 of the canonical JSON without output_dir and workers.
  std::string hash() const;
};

/// Targets for one sample under a label regime. Synth requires a non-MNIST
/// source; annotation regimes require labels.
Distribution regime_target(LabelRegime regime, const data::ImageSample& sample,
                           const annotation::ImageLabelSet* labels);

}  // namespace hlv::experiment
