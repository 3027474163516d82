#include "hlv/cartography/data_map.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace hlv::cartography {

EpochWindow last_epochs(std::size_t epochs, std::size_t n) {
  if (epochs == 0 || n == 0) throw std::invalid_argument("last_epochs: empty window");
  return {epochs > n ? epochs - n + 1 : 1, epochs};
}

std::vector<DataMapPoint> data_map(const nn::DynamicsLog& log, const std::vector<std::int64_t>& seeds,
                                   EpochWindow window, const std::map<std::string, std::size_t>& target_class) {
  if (window.first < 1 || window.last < window.first) throw std::invalid_argument("data_map: invalid epoch window");
  if (seeds.empty()) throw std::invalid_argument("data_map: no seeds");
  const std::set<std::int64_t> wanted(seeds.begin(), seeds.end());

  struct Pool {
    std::map<std::pair<std::int64_t, std::size_t>, const nn::DynamicsFrame*> frames;
  };
  std::map<std::string, Pool> pools;
  for (const auto& f : log.frames) {
    if (!target_class.count(f.sample_id)) continue;
    auto& pool = pools[f.sample_id];
    if (wanted.count(f.seed) && f.epoch >= window.first && f.epoch <= window.last) pool.frames[{f.seed, f.epoch}] = &f;
  }

  std::vector<DataMapPoint> out;
  out.reserve(pools.size());
  for (const auto& [id, pool] : pools) {
    for (std::int64_t seed : wanted) {
      for (std::size_t e = window.first; e <= window.last; ++e) {
        if (!pool.frames.count({seed, e})) {
          throw std::invalid_argument("data_map: missing frame (seed " + std::to_string(seed) + ", epoch " +
                                      std::to_string(e) + ", sample " + id + ")");
        }
      }
    }
    const std::size_t target = target_class.at(id);
    double sum = 0.0;
    std::size_t correct = 0;
    for (const auto& [key, f] : pool.frames) {
      sum += f->p_target;
      correct += argmax(f->pred) == target ? 1 : 0;
    }
    const double n = static_cast<double>(pool.frames.size());
    const double mean = sum / n;
    double sq = 0.0;
    for (const auto& [key, f] : pool.frames) sq += (f->p_target - mean) * (f->p_target - mean);
    DataMapPoint p;
    p.sample_id = id;
    p.confidence = mean;
    p.variability = std::sqrt(sq / n);
    p.correctness = static_cast<double>(correct) / n;
    p.seeds.assign(wanted.begin(), wanted.end());
    p.window = window;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace hlv::cartography
