#include "hlv/annotation/stats.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace hlv::annotation {

std::string CorpusStats::to_json() const {
  nlohmann::ordered_json j;
  j["n_images"] = n_images;
  j["nohlv_pct"] = nohlv_pct;
  j["hlv_pct"] = hlv_pct;
  j["orig_label_agreement_pct"] = agreement_pct;
  j["nan_pct"] = nan_pct;
  j["mean_u_mean"] = mean_u_mean;
  j["mean_u_prop"] = mean_u_prop;
  j["mean_entropy_soft_w"] = mean_entropy_soft_w;
  return j.dump(2);
}

CorpusStats corpus_stats(std::span<const ImageLabelSet> labels, std::span<const Distribution> originals) {
  if (labels.empty()) throw std::invalid_argument("corpus_stats: no label sets");
  if (labels.size() != originals.size()) throw std::invalid_argument("corpus_stats: label/original count mismatch");
  CorpusStats s;
  s.n_images = labels.size();
  std::size_t hlv = 0, agree = 0, nan = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& l = labels[i];
    hlv += l.hlv ? 1 : 0;
    const std::size_t major = argmax(l.maj_n);
    agree += major == argmax(originals[i]) ? 1 : 0;
    nan += major == kNanClass ? 1 : 0;
    s.mean_u_mean += l.u_mean;
    s.mean_u_prop += l.u_prop;
    double h = 0.0;
    for (double p : l.soft_w) {
      if (p > 0.0) h -= p * std::log(p);
    }
    s.mean_entropy_soft_w += h;
  }
  const double n = static_cast<double>(labels.size());
  s.hlv_pct = 100.0 * static_cast<double>(hlv) / n;
  s.nohlv_pct = 100.0 * static_cast<double>(labels.size() - hlv) / n;
  s.agreement_pct = 100.0 * static_cast<double>(agree) / n;
  s.nan_pct = 100.0 * static_cast<double>(nan) / n;
  s.mean_u_mean /= n;
  s.mean_u_prop /= n;
  s.mean_entropy_soft_w /= n;
  return s;
}

}  // namespace hlv::annotation
