#pragma once

#include <span>
#include <string>

#include "hlv/annotation/aggregate.hpp"

namespace hlv::annotation {

struct CorpusStats {
  std::size_t n_images = 0;
  double nohlv_pct = 0.0;
  double hlv_pct = 0.0;
  /// maj_n argmax equal to the original target's argmax.
  double agreement_pct = 0.0;
  /// maj_n on the NaN class.
  double nan_pct = 0.0;
  double mean_u_mean = 0.0;
  double mean_u_prop = 0.0;
  /// Shannon entropy of soft_w in nats, averaged over images.
  double mean_entropy_soft_w = 0.0;

  std::string to_json() const;
};

/// `originals[i]` is the original target of the image behind `labels[i]`.
CorpusStats corpus_stats(std::span<const ImageLabelSet> labels, std::span<const Distribution> originals);

}  // namespace hlv::annotation
