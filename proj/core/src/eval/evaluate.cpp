#include "hlv/eval/evaluate.hpp"

#include <stdexcept>

#include "hlv/eval/metrics.hpp"

namespace hlv::eval {

std::string to_string(EvalTarget target) { return target == EvalTarget::Orig ? "orig" : "new_soft_w"; }

EvalTarget parse_eval_target(std::string_view text) {
  if (text == "orig") return EvalTarget::Orig;
  if (text == "new_soft_w" || text == "new") return EvalTarget::NewSoftW;
  throw std::invalid_argument("unknown eval target '" + std::string(text) + "'");
}

const StratumMetrics* StratifiedMetrics::find(Stratum stratum) const {
  for (const auto& r : rows) {
    if (r.stratum == stratum) return &r;
  }
  return nullptr;
}

StratifiedMetrics evaluate_predictions(std::span<const Distribution> preds, std::span<const Distribution> originals,
                                       std::span<const annotation::ImageLabelSet> labels, EvalTarget target,
                                       std::span<const Stratum> strata) {
  if (preds.size() != originals.size() || preds.size() != labels.size()) {
    throw std::invalid_argument("evaluate: predictions, originals and labels differ in length");
  }
  StratifiedMetrics out;
  out.target = target;
  for (Stratum stratum : strata) {
    std::vector<Distribution> p, eval_t, human;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      if (stratum == Stratum::Hlv && !labels[i].hlv) continue;
      if (stratum == Stratum::NoHlv && labels[i].hlv) continue;
      p.push_back(preds[i]);
      eval_t.push_back(target == EvalTarget::Orig ? one_hot(argmax(originals[i])) : labels[i].soft_w);
      human.push_back(labels[i].soft_w);
    }
    if (p.empty()) {
      out.notes.push_back("stratum " + cartography::to_string(stratum) + " is empty");
      continue;
    }
    StratumMetrics m;
    m.stratum = stratum;
    m.n = p.size();
    m.accuracy = accuracy(p, eval_t);
    m.kld = mean_kld(human, p);
    m.brier = mean_brier(p, eval_t);
    out.rows.push_back(m);
  }
  return out;
}

std::vector<Distribution> to_distributions(const nn::Matrix& probs) {
  if (static_cast<std::size_t>(probs.cols()) != kNumClasses) {
    throw std::invalid_argument("to_distributions: expected 11 columns");
  }
  std::vector<Distribution> out(static_cast<std::size_t>(probs.rows()));
  for (Eigen::Index r = 0; r < probs.rows(); ++r) {
    for (std::size_t k = 0; k < kNumClasses; ++k) out[static_cast<std::size_t>(r)][k] = probs(r, static_cast<Eigen::Index>(k));
  }
  return out;
}

StratifiedMetrics evaluate(const nn::Model& model, const nn::Matrix& inputs, std::span<const Distribution> originals,
                           std::span<const annotation::ImageLabelSet> labels, EvalTarget target,
                           std::span<const Stratum> strata) {
  const auto preds = to_distributions(model.predict_proba(inputs));
  return evaluate_predictions(preds, originals, labels, target, strata);
}

}  // namespace hlv::eval
