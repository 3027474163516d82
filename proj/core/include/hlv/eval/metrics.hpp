#pragma once

#include <span>

#include "hlv/common/types.hpp"

namespace hlv::eval {

inline constexpr double kKldEpsilon = 1e-12;

/// Percentage of rows whose argmax agrees (ties to the lowest index).
/// Throws on an empty batch or a length mismatch.
double accuracy(std::span<const Distribution> preds, std::span<const Distribution> targets);

/// KL(p_human || p_model) in nats, p_model clamped below at 1e-12.
double kld(const Distribution& p_human, const Distribution& p_model);

/// Multi-class Brier score: squared Euclidean distance, in [0, 2].
double brier(const Distribution& p_model, const Distribution& target);

double mean_kld(std::span<const Distribution> p_human, std::span<const Distribution> p_model);
double mean_brier(std::span<const Distribution> p_model, std::span<const Distribution> targets);

}  // namespace hlv::eval
