#include "hlv/experiment/simulate.hpp"

#include <algorithm>
#include <stdexcept>

#include "hlv/common/rng.hpp"

namespace hlv::experiment {

std::vector<annotation::AnnotationRecord> simulate_annotations(std::span<const ReferenceItem> items,
                                                               const SimAnnotatorModel& model) {
  model.validate();
  std::vector<std::size_t> counts;
  std::vector<double> count_w;
  for (const auto& [n, w] : model.count_weights) {
    counts.push_back(n);
    count_w.push_back(w);
  }

  std::vector<annotation::AnnotationRecord> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& item = items[i];
    if (item.image_id.empty()) throw std::invalid_argument("simulate_annotations: item without image id");
    require_normalized(item.q, "reference distribution of " + item.image_id);
    Rng rng(derive_seed({model.seed, i, 0x51a7}));
    const std::size_t n = counts[rng.categorical(count_w)];
    for (std::size_t a = 0; a < n; ++a) {
      annotation::AnnotationRecord rec;
      rec.image_id = item.image_id;
      rec.annotator_id = "sim-" + std::to_string(a);
      const std::size_t c = rng.bernoulli(model.noise_rate) ? static_cast<std::size_t>(rng.index(kNumDigits))
                                                           : rng.categorical(item.q);
      for (std::size_t j = 0; j < kNumDigits; ++j) {
        const double u = rng.uniform();
        if (c == kNanClass) {
          rec.judgments[j] = annotation::Judgment::No;
        } else if (j == c) {
          rec.judgments[j] = annotation::Judgment::Yes;
        } else {
          const double p_unsure = std::min(1.0, item.q[j] / model.unsure_threshold);
          rec.judgments[j] = u < p_unsure ? annotation::Judgment::Unsure : annotation::Judgment::No;
        }
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace hlv::experiment
