#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hlv/nn/adam.hpp"
#include "hlv/nn/dynamics_log.hpp"
#include "hlv/nn/model.hpp"

namespace hlv::nn {

enum class TrainRegime {
  TestPerformance,  // early stopping + plateau LR schedule, best-validation restore
  Dynamics,         // fixed horizon, constant LR, no early stop
};

struct PlateauConfig {
  double factor = 0.1;
  std::size_t patience = 3;
  double min_delta = 1e-4;
};

struct TrainConfig {
  double learning_rate = 1e-3;
  std::size_t batch_size = 64;
  std::size_t max_epochs = 60;
  std::optional<std::size_t> fixed_epochs;  // Dynamics regime horizon, 40 when unset
  std::int64_t seed = 0;
  TrainRegime regime = TrainRegime::TestPerformance;
  PlateauConfig plateau;
  std::size_t early_stop_patience = 8;
  AdamConfig adam;
  /// Append per-sample predictions after every epoch.
  bool record_dynamics = true;

  void validate() const;
  std::size_t horizon() const;
};

/// Normalized inputs with aligned ids and 11-class target rows.
struct TrainingSet {
  std::vector<std::string> ids;
  Matrix inputs;
  Matrix targets;

  std::size_t size() const { return ids.size(); }
  void validate(const std::string& what) const;
};

struct EpochRecord {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;
  double lr = 0.0;
};

struct FitResult {
  Model model;
  DynamicsLog dynamics;
  std::vector<EpochRecord> history;
  std::size_t best_epoch = 0;
};

/// Mean soft cross-entropy of the model over a set (no gradient).
double mean_loss(const Model& model, const TrainingSet& set);

/// Trains a copy of `initial`. Single-threaded and fully determined by the inputs:
/// each epoch's data order comes from a generator derived from (seed, epoch).
/// Dynamics regime accepts an empty validation set (val_loss recorded as NaN).
FitResult fit(const Model& initial, const TrainingSet& train, const TrainingSet& val, const TrainConfig& config);

/// "epoch,train_loss,val_loss,lr" CSV.
std::string history_csv(const std::vector<EpochRecord>& history);

}  // namespace hlv::nn
