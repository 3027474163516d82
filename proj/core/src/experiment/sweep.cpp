#include "hlv/experiment/sweep.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "hlv/common/io.hpp"
#include "hlv/common/rng.hpp"
#include "hlv/eval/evaluate.hpp"
#include "hlv/eval/metrics.hpp"
#include "hlv/nn/trainer.hpp"

namespace hlv::experiment {

namespace {

nn::TrainingSet one_hot_set(std::span<const data::ImageSample> samples, data::Normalization norm) {
  nn::TrainingSet set;
  set.inputs = data::normalize(samples, norm);
  set.targets = nn::Matrix::Zero(static_cast<Eigen::Index>(samples.size()), static_cast<Eigen::Index>(kNumClasses));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    set.ids.push_back(samples[i].id);
    set.targets(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(data::original_digit(samples[i]))) = 1.0;
  }
  return set;
}

}  // namespace

std::string SweepTable::to_csv() const {
  CsvWriter csv({"per_class", "fold", "accuracy"});
  for (const auto& r : rows) {
    for (std::size_t f = 0; f < r.fold_accuracy.size(); ++f) {
      csv.field(r.per_class).field(std::to_string(f)).field(r.fold_accuracy[f]);
      csv.end_row();
    }
    csv.field(r.per_class).field("mean").field(r.mean);
    csv.end_row();
    csv.field(r.per_class).field("std").field(r.std);
    csv.end_row();
  }
  return csv.str();
}

SweepTable sensitivity_sweep(std::span<const data::ImageSample> pool, std::span<const data::ImageSample> test,
                             const SweepConfig& config, const ProgressFn& progress) {
  if (config.per_class_counts.empty()) throw std::invalid_argument("sweep: no per-class counts");
  if (config.folds == 0) throw std::invalid_argument("sweep: folds must be >= 1");
  if (config.epochs == 0) throw std::invalid_argument("sweep: epochs must be >= 1");
  if (test.empty()) throw std::invalid_argument("sweep: empty test set");

  std::array<std::vector<std::size_t>, kNumDigits> by_digit;
  for (std::size_t i = 0; i < pool.size(); ++i) by_digit[data::original_digit(pool[i])].push_back(i);
  for (std::size_t n : config.per_class_counts) {
    if (n == 0) throw std::invalid_argument("sweep: per-class count must be positive");
    for (std::size_t d = 0; d < kNumDigits; ++d) {
      if (by_digit[d].size() < n) {
        throw std::invalid_argument("sweep: digit " + std::to_string(d) + " has " + std::to_string(by_digit[d].size()) +
                                    " samples, fewer than " + std::to_string(n));
      }
    }
  }

  const auto test_set = one_hot_set(test, config.normalization);
  std::vector<Distribution> test_targets;
  for (const auto& s : test) test_targets.push_back(one_hot(data::original_digit(s)));
  const nn::TrainingSet empty{{}, nn::Matrix(0, static_cast<Eigen::Index>(kNumPixels)),
                              nn::Matrix(0, static_cast<Eigen::Index>(kNumClasses))};

  SweepTable table;
  for (std::size_t n : config.per_class_counts) {
    SweepRow row;
    row.per_class = n;
    for (std::size_t fold = 0; fold < config.folds; ++fold) {
      const std::uint64_t fold_seed = derive_seed({config.seed, n, fold});
      Rng rng(fold_seed);
      std::vector<data::ImageSample> subset;
      for (std::size_t d = 0; d < kNumDigits; ++d) {
        auto idx = by_digit[d];
        rng.shuffle(std::span<std::size_t>(idx));
        for (std::size_t k = 0; k < n; ++k) subset.push_back(pool[idx[k]]);
      }
      nn::TrainConfig tc;
      tc.regime = nn::TrainRegime::Dynamics;
      tc.fixed_epochs = config.epochs;
      tc.learning_rate = config.learning_rate;
      tc.batch_size = config.batch_size;
      tc.seed = static_cast<std::int64_t>(fold_seed >> 1);
      tc.record_dynamics = false;
      const auto initial = nn::Model::build({config.arch}, derive_seed({fold_seed, 0x1417}));
      const auto fit = nn::fit(initial, one_hot_set(subset, config.normalization), empty, tc);
      const auto preds = eval::to_distributions(fit.model.predict_proba(test_set.inputs));
      const double acc = eval::accuracy(preds, test_targets);
      row.fold_accuracy.push_back(acc);
      if (progress) progress("n=" + std::to_string(n) + " fold " + std::to_string(fold) + ": " + format_double(acc));
    }
    for (double a : row.fold_accuracy) row.mean += a;
    row.mean /= static_cast<double>(row.fold_accuracy.size());
    double var = 0.0;
    for (double a : row.fold_accuracy) var += (a - row.mean) * (a - row.mean);
    row.std = std::sqrt(var / static_cast<double>(row.fold_accuracy.size()));
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace hlv::experiment
