#include "hlv/cartography/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace hlv::cartography {

double jsd(const Distribution& p, const Distribution& q) {
  require_normalized(p, "jsd: p");
  require_normalized(q, "jsd: q");
  double kl_p = 0.0;
  double kl_q = 0.0;
  for (std::size_t k = 0; k < kNumClasses; ++k) {
    const double m = 0.5 * (p[k] + q[k]);
    if (p[k] > 0.0) kl_p += p[k] * std::log2(p[k] / m);
    if (q[k] > 0.0) kl_q += q[k] * std::log2(q[k] / m);
  }
  return std::clamp(0.5 * (kl_p + kl_q), 0.0, 1.0);
}

std::vector<double> jsd_series(const nn::DynamicsLog& log, const std::set<std::string>& subset) {
  std::map<std::size_t, std::map<std::string, const Distribution*>> by_epoch;
  std::set<std::int64_t> seeds;
  for (const auto& f : log.frames) {
    seeds.insert(f.seed);
    if (subset.empty() || subset.count(f.sample_id)) by_epoch[f.epoch][f.sample_id] = &f.pred;
  }
  if (seeds.size() > 1) throw std::invalid_argument("jsd_series: log holds more than one seed");
  if (by_epoch.size() < 2) throw std::invalid_argument("jsd_series: need at least two epochs");

  std::vector<double> series;
  auto prev = by_epoch.begin();
  for (auto it = std::next(prev); it != by_epoch.end(); prev = it, ++it) {
    if (it->first != prev->first + 1) throw std::invalid_argument("jsd_series: epochs are not consecutive");
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& [id, pred] : it->second) {
      const auto before = prev->second.find(id);
      if (before == prev->second.end()) {
        throw std::invalid_argument("jsd_series: sample " + id + " missing at epoch " + std::to_string(prev->first));
      }
      sum += jsd(*pred, *before->second);
      ++n;
    }
    series.push_back(n > 0 ? sum / static_cast<double>(n) : 0.0);
  }
  return series;
}

}  // namespace hlv::cartography
