#include "hlv/annotation/aggregate.hpp"

#include <stdexcept>
#include <vector>

namespace hlv::annotation {

AnnotatorDistribution annotator_distribution(const AnnotationRecord& record, WeightScheme scheme,
                                             const AggregationConfig& config) {
  if (record.excluded) {
    throw std::invalid_argument("record of annotator " + record.annotator_id + " on " + record.image_id +
                                " is excluded");
  }
  const double unsure = scheme == WeightScheme::Equal ? 1.0 : config.unsure_weight;
  AnnotatorDistribution out;
  double total = 0.0;
  for (std::size_t d = 0; d < kNumDigits; ++d) {
    switch (record.judgments[d]) {
      case Judgment::Yes: out.probs[d] = 1.0; break;
      case Judgment::Unsure: out.probs[d] = unsure; break;
      case Judgment::No: out.probs[d] = 0.0; break;
    }
    total += out.probs[d];
  }
  if (total == 0.0) {
    out.probs = one_hot(kNanClass);
  } else {
    for (std::size_t d = 0; d < kNumDigits; ++d) out.probs[d] /= total;
  }
  out.u = static_cast<double>(record.count(Judgment::Unsure)) / config.unsure_denominator;
  return out;
}

Distribution majority_label(const Distribution& soft) { return one_hot(argmax(soft)); }

ImageLabelSet aggregate_image(std::span<const AnnotationRecord> records, const AggregationConfig& config) {
  std::vector<const AnnotationRecord*> usable;
  for (const auto& r : records) {
    if (!records.empty() && r.image_id != records.front().image_id) {
      throw std::invalid_argument("aggregate_image: records for different images (" + records.front().image_id +
                                  ", " + r.image_id + ")");
    }
    if (!r.excluded) usable.push_back(&r);
  }
  if (usable.empty()) throw std::invalid_argument("aggregate_image: no usable annotation records");

  ImageLabelSet out;
  std::size_t unsure_annotators = 0;
  for (const auto* r : usable) {
    const auto eq = annotator_distribution(*r, WeightScheme::Equal, config);
    const auto w = annotator_distribution(*r, WeightScheme::Weighted, config);
    for (std::size_t k = 0; k < kNumClasses; ++k) {
      out.soft_e[k] += eq.probs[k];
      out.soft_w[k] += w.probs[k];
    }
    out.u_mean += w.u;
    if (w.u > 0.0) ++unsure_annotators;
  }
  const double n = static_cast<double>(usable.size());
  for (std::size_t k = 0; k < kNumClasses; ++k) {
    out.soft_e[k] /= n;
    out.soft_w[k] /= n;
  }
  out.u_mean /= n;
  out.u_prop = static_cast<double>(unsure_annotators) / n;
  out.n_annotators = usable.size();
  out.maj_n = majority_label(out.soft_w);
  out.hlv = support_size(out.soft_w) > 1;
  return out;
}

std::map<std::string, ImageLabelSet> aggregate_all(std::span<const AnnotationRecord> records,
                                                   const AggregationConfig& config) {
  std::map<std::string, std::vector<AnnotationRecord>> groups;
  for (const auto& r : records) groups[r.image_id].push_back(r);
  std::map<std::string, ImageLabelSet> out;
  for (const auto& [id, group] : groups) {
    bool any_usable = false;
    for (const auto& r : group) any_usable = any_usable || !r.excluded;
    if (any_usable) out.emplace(id, aggregate_image(group, config));
  }
  return out;
}

}  // namespace hlv::annotation
