#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hlv/annotation/aggregate.hpp"
#include "hlv/cartography/alignment.hpp"
#include "hlv/nn/model.hpp"

namespace hlv::eval {

using cartography::Stratum;

enum class EvalTarget { Orig, NewSoftW };

std::string to_string(EvalTarget target);
EvalTarget parse_eval_target(std::string_view text);

struct StratumMetrics {
  Stratum stratum = Stratum::All;
  std::size_t n = 0;
  double accuracy = 0.0;
  double kld = 0.0;  // always against soft_w
  double brier = 0.0;
};

struct StratifiedMetrics {
  EvalTarget target = EvalTarget::Orig;
  std::vector<StratumMetrics> rows;
  std::vector<std::string> notes;  // strata left out because they were empty

  const StratumMetrics* find(Stratum stratum) const;
};

/// Metrics of precomputed predictions. `originals` are the original targets
/// embedded in 11 classes; `labels` carry soft_w and the HLV flag.
StratifiedMetrics evaluate_predictions(std::span<const Distribution> preds, std::span<const Distribution> originals,
                                       std::span<const annotation::ImageLabelSet> labels, EvalTarget target,
                                       std::span<const Stratum> strata);

/// Runs the model over normalized inputs (one row per sample) and evaluates.
StratifiedMetrics evaluate(const nn::Model& model, const nn::Matrix& inputs, std::span<const Distribution> originals,
                           std::span<const annotation::ImageLabelSet> labels, EvalTarget target,
                           std::span<const Stratum> strata);

/// Rows of a probability matrix as distributions.
std::vector<Distribution> to_distributions(const nn::Matrix& probs);

}  // namespace hlv::eval
