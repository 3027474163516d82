#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hlv/data/normalize.hpp"
#include "hlv/data/sample.hpp"
#include "hlv/experiment/runner.hpp"
#include "hlv/nn/model.hpp"

namespace hlv::experiment {

struct SweepConfig {
  std::vector<std::size_t> per_class_counts{50, 150};
  std::size_t folds = 5;
  std::size_t epochs = 25;
  double learning_rate = 1e-3;
  std::size_t batch_size = 64;
  nn::ArchKind arch = nn::ArchKind::LeNet;
  data::Normalization normalization = data::kMnistNormalization;
  std::uint64_t seed = 0;
};

struct SweepRow {
  std::size_t per_class = 0;
  std::vector<double> fold_accuracy;
  double mean = 0.0;
  double std = 0.0;  // population
};

struct SweepTable {
  std::vector<SweepRow> rows;
  /// per_class,fold,accuracy rows followed by per_class,mean,std summary rows.
  std::string to_csv() const;
};

/// For each count n and fold, draws n training images per digit without
/// replacement from `pool`, trains for exactly `epochs` epochs with a constant
/// learning rate, and reports accuracy on `test`.
SweepTable sensitivity_sweep(std::span<const data::ImageSample> pool, std::span<const data::ImageSample> test,
                             const SweepConfig& config, const ProgressFn& progress = {});

}  // namespace hlv::experiment
