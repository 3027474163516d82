#include "hlv/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hlv::eval {

namespace {

void check_batch(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": batch length mismatch");
  if (a == 0) throw std::invalid_argument(std::string(what) + ": empty batch");
}

}  // namespace

double accuracy(std::span<const Distribution> preds, std::span<const Distribution> targets) {
  check_batch(preds.size(), targets.size(), "accuracy");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (argmax(preds[i]) == argmax(targets[i])) ++correct;
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(preds.size());
}

double kld(const Distribution& p_human, const Distribution& p_model) {
  require_normalized(p_human, "kld p_human");
  require_normalized(p_model, "kld p_model");
  double total = 0.0;
  for (std::size_t k = 0; k < kNumClasses; ++k) {
    if (p_human[k] <= 0.0) continue;
    total += p_human[k] * std::log(p_human[k] / std::max(p_model[k], kKldEpsilon));
  }
  return std::max(total, 0.0);
}

double brier(const Distribution& p_model, const Distribution& target) {
  require_normalized(p_model, "brier p_model");
  require_normalized(target, "brier target");
  double total = 0.0;
  for (std::size_t k = 0; k < kNumClasses; ++k) {
    const double d = p_model[k] - target[k];
    total += d * d;
  }
  return total;
}

double mean_kld(std::span<const Distribution> p_human, std::span<const Distribution> p_model) {
  check_batch(p_human.size(), p_model.size(), "mean_kld");
  double total = 0.0;
  for (std::size_t i = 0; i < p_human.size(); ++i) total += kld(p_human[i], p_model[i]);
  return total / static_cast<double>(p_human.size());
}

double mean_brier(std::span<const Distribution> p_model, std::span<const Distribution> targets) {
  check_batch(p_model.size(), targets.size(), "mean_brier");
  double total = 0.0;
  for (std::size_t i = 0; i < p_model.size(); ++i) total += brier(p_model[i], targets[i]);
  return total / static_cast<double>(p_model.size());
}

}  // namespace hlv::eval
