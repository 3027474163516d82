#include "hlv/nn/trainer.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "hlv/common/io.hpp"
#include "hlv/common/rng.hpp"
#include "hlv/nn/loss.hpp"

namespace hlv::nn {

namespace {

constexpr std::uint64_t kShuffleStream = 0x5348554646ULL;
constexpr std::size_t kEvalChunk = 256;

void gather_rows(const Matrix& src, std::span<const std::size_t> rows, Matrix& dst) {
  dst.resize(static_cast<Eigen::Index>(rows.size()), src.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) dst.row(static_cast<Eigen::Index>(i)) = src.row(static_cast<Eigen::Index>(rows[i]));
}

void record_epoch(const Model& model, const TrainingSet& train, const TrainConfig& config, std::size_t epoch,
                  DynamicsLog& log) {
  const Matrix probs = model.predict_proba(train.inputs, kEvalChunk);
  for (std::size_t i = 0; i < train.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    DynamicsFrame f;
    f.seed = config.seed;
    f.epoch = epoch;
    f.sample_id = train.ids[i];
    for (std::size_t k = 0; k < kNumClasses; ++k) f.pred[k] = probs(r, static_cast<Eigen::Index>(k));
    const auto target_row = train.targets.row(r);
    f.p_target = f.pred[argmax(std::span<const double>(target_row.data(), kNumClasses))];
    log.frames.push_back(std::move(f));
  }
}

}  // namespace

void TrainConfig::validate() const {
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (max_epochs < 1) throw std::invalid_argument("max_epochs must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw std::invalid_argument("learning_rate must be > 0");
  if (fixed_epochs && *fixed_epochs < 1) throw std::invalid_argument("fixed_epochs must be >= 1");
  if (!(plateau.factor > 0.0 && plateau.factor < 1.0)) throw std::invalid_argument("plateau factor must be in (0,1)");
}

std::size_t TrainConfig::horizon() const {
  if (regime == TrainRegime::Dynamics) return fixed_epochs.value_or(40);
  return max_epochs;
}

void TrainingSet::validate(const std::string& what) const {
  if (static_cast<std::size_t>(inputs.rows()) != ids.size() || static_cast<std::size_t>(targets.rows()) != ids.size()) {
    throw std::invalid_argument(what + ": target/sample count mismatch (" + std::to_string(ids.size()) + " ids, " +
                                std::to_string(inputs.rows()) + " inputs, " + std::to_string(targets.rows()) +
                                " targets)");
  }
  if (!ids.empty() && targets.cols() != static_cast<Eigen::Index>(kNumClasses)) {
    throw std::invalid_argument(what + ": targets must have 11 columns");
  }
}

double mean_loss(const Model& model, const TrainingSet& set) {
  if (set.size() == 0) return std::numeric_limits<double>::quiet_NaN();
  double total = 0.0;
  for (Eigen::Index start = 0; start < set.inputs.rows(); start += kEvalChunk) {
    const Eigen::Index n = std::min<Eigen::Index>(kEvalChunk, set.inputs.rows() - start);
    const Matrix logits = model.forward(set.inputs.middleRows(start, n));
    total += soft_cross_entropy(logits, set.targets.middleRows(start, n)).loss * static_cast<double>(n);
  }
  return total / static_cast<double>(set.size());
}

FitResult fit(const Model& initial, const TrainingSet& train, const TrainingSet& val, const TrainConfig& config) {
  config.validate();
  train.validate("train split");
  val.validate("validation split");
  if (train.size() == 0) throw std::invalid_argument("fit: empty training split");
  const bool dynamics = config.regime == TrainRegime::Dynamics;
  if (!dynamics && val.size() == 0) throw std::invalid_argument("fit: empty validation split");
  if (static_cast<std::size_t>(train.inputs.cols()) != initial.input_size()) {
    throw std::invalid_argument("fit: input width does not match the model");
  }

  FitResult result{initial, {}, {}, 0};
  Model& model = result.model;
  ParamState state(std::vector<double>(model.params().begin(), model.params().end()));
  std::vector<double> grad(model.param_count());
  std::vector<double> best_params = state.params;

  const std::size_t epochs = config.horizon();
  double lr = config.learning_rate;
  double best_val = std::numeric_limits<double>::infinity();
  double patience_ref = best_val;
  double plateau_ref = best_val;
  std::size_t since_improvement = 0;
  std::size_t plateau_bad = 0;

  std::vector<std::size_t> order(train.size());
  Matrix xb, tb;
  for (std::size_t epoch = 1; epoch <= epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng shuffler(derive_seed({static_cast<std::uint64_t>(config.seed), epoch, kShuffleStream}));
    shuffler.shuffle(std::span<std::size_t>(order));

    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t n = std::min(config.batch_size, order.size() - start);
      const auto rows = std::span<const std::size_t>(order).subspan(start, n);
      gather_rows(train.inputs, rows, xb);
      gather_rows(train.targets, rows, tb);
      epoch_loss += model.loss_and_gradient(xb, tb, grad) * static_cast<double>(n);
      adam_step(state, grad, lr, config.adam);
      std::copy(state.params.begin(), state.params.end(), model.mutable_params().begin());
    }

    EpochRecord rec{epoch, epoch_loss / static_cast<double>(train.size()), mean_loss(model, val), lr};
    result.history.push_back(rec);
    if (config.record_dynamics) record_epoch(model, train, config, epoch, result.dynamics);

    if (dynamics) continue;

    if (rec.val_loss < best_val) {
      best_val = rec.val_loss;
      best_params = state.params;
      result.best_epoch = epoch;
    }
    if (rec.val_loss < patience_ref - config.plateau.min_delta) {
      patience_ref = rec.val_loss;
      since_improvement = 0;
    } else {
      ++since_improvement;
    }
    if (rec.val_loss < plateau_ref - config.plateau.min_delta) {
      plateau_ref = rec.val_loss;
      plateau_bad = 0;
    } else if (++plateau_bad > config.plateau.patience) {
      lr *= config.plateau.factor;
      plateau_bad = 0;
    }
    if (since_improvement >= config.early_stop_patience) break;
  }

  if (dynamics) {
    result.best_epoch = epochs;
  } else {
    std::copy(best_params.begin(), best_params.end(), model.mutable_params().begin());
  }
  return result;
}

std::string history_csv(const std::vector<EpochRecord>& history) {
  CsvWriter csv({"epoch", "train_loss", "val_loss", "lr"});
  for (const auto& r : history) {
    csv.field(r.epoch).field(r.train_loss).field(r.val_loss).field(r.lr);
    csv.end_row();
  }
  return csv.str();
}

}  // namespace hlv::nn
