#include "hlv/data/regions.hpp"

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace hlv::data {

std::string to_string(Region region) {
  switch (region) {
    case Region::Easy: return "easy";
    case Region::Hard: return "hard";
    case Region::Ambiguous: return "ambiguous";
    case Region::Unfiltered: return "unfiltered";
  }
  return "unfiltered";
}

Region parse_region(std::string_view text) {
  if (text == "easy") return Region::Easy;
  if (text == "hard") return Region::Hard;
  if (text == "ambiguous") return Region::Ambiguous;
  if (text == "unfiltered" || text.empty()) return Region::Unfiltered;
  throw std::invalid_argument("unknown region: " + std::string(text));
}

CartographyThresholds CartographyThresholds::mnist() { return {{0.7, 0.125}, {0.3, 0.125}, {0.3, 0.7, 0.125}, 5}; }

CartographyThresholds CartographyThresholds::mukhoti() { return {{0.7, 0.1}, {0.3, 0.1}, {0.3, 0.7, 0.1}, 20}; }

void CartographyThresholds::validate() const {
  if (horizon_epochs < 1) throw std::invalid_argument("cartography horizon must be >= 1 epoch");
  if (!(easy.mu_min > hard.mu_max)) throw std::invalid_argument("easy mu_min must exceed hard mu_max");
  if (!(ambiguous.mu_lo <= ambiguous.mu_hi && ambiguous.mu_lo >= hard.mu_max && ambiguous.mu_hi <= easy.mu_min)) {
    throw std::invalid_argument("ambiguous band must lie between the hard and easy thresholds");
  }
}

Region CartographyThresholds::classify(double mu, double sigma) const {
  if (mu > easy.mu_min && sigma < easy.sigma_max) return Region::Easy;
  if (mu < hard.mu_max && sigma < hard.sigma_max) return Region::Hard;
  if (mu >= ambiguous.mu_lo && mu <= ambiguous.mu_hi && sigma > ambiguous.sigma_min) return Region::Ambiguous;
  return Region::Unfiltered;
}

std::vector<RegionAssignment> assign_regions(const nn::DynamicsLog& log, const CartographyThresholds& thresholds) {
  thresholds.validate();
  std::set<std::int64_t> seeds;
  // sample -> (seed, epoch) -> p_target
  std::map<std::string, std::map<std::pair<std::int64_t, std::size_t>, double>> values;
  for (const auto& f : log.frames) {
    seeds.insert(f.seed);
    if (f.epoch >= 1 && f.epoch <= thresholds.horizon_epochs) values[f.sample_id][{f.seed, f.epoch}] = f.p_target;
  }
  for (const auto& f : log.frames) values.try_emplace(f.sample_id);

  std::vector<RegionAssignment> out;
  out.reserve(values.size());
  for (const auto& [id, frames] : values) {
    for (std::int64_t seed : seeds) {
      for (std::size_t e = 1; e <= thresholds.horizon_epochs; ++e) {
        if (!frames.count({seed, e})) {
          throw std::invalid_argument("dynamics missing epoch " + std::to_string(e) + " (seed " +
                                      std::to_string(seed) + ") for sample " + id);
        }
      }
    }
    double sum = 0.0;
    for (const auto& [key, p] : frames) sum += p;
    const double n = static_cast<double>(frames.size());
    const double mu = sum / n;
    double sq = 0.0;
    for (const auto& [key, p] : frames) sq += (p - mu) * (p - mu);
    const double sigma = std::sqrt(sq / n);
    out.push_back({id, mu, sigma, thresholds.classify(mu, sigma)});
  }
  return out;
}

}  // namespace hlv::data
