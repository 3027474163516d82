#include "hlv/data/split.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "hlv/common/rng.hpp"

namespace hlv::data {

SplitRatios SplitRatios::from_counts(std::size_t train, std::size_t val, std::size_t test) {
  const double total = static_cast<double>(train + val + test);
  if (total == 0.0) throw std::invalid_argument("split counts are all zero");
  return {static_cast<double>(train) / total, static_cast<double>(val) / total, static_cast<double>(test) / total};
}

void SplitRatios::validate() const {
  if (train < 0.0 || val < 0.0 || test < 0.0) throw std::invalid_argument("split ratios must be non-negative");
  if (std::abs(train + val + test - 1.0) > 1e-9) throw std::invalid_argument("split ratios must sum to 1");
}

std::vector<std::size_t> apportion(std::size_t n, std::span<const double> weights) {
  std::vector<std::size_t> counts(weights.size());
  std::vector<double> remainders(weights.size());
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double exact = static_cast<double>(n) * weights[k];
    counts[k] = static_cast<std::size_t>(std::floor(exact));
    remainders[k] = exact - static_cast<double>(counts[k]);
    assigned += counts[k];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) counts[order[i % order.size()]] += 1;
  while (assigned > n) {  // guards floating-point overshoot
    for (std::size_t k = weights.size(); k-- > 0 && assigned > n;) {
      if (counts[k] > 0) {
        --counts[k];
        --assigned;
      }
    }
  }
  return counts;
}

std::vector<Split> stratified_split(std::span<const StratifiedItem> items, const SplitRatios& ratios,
                                    std::size_t min_easy_per_class, std::uint64_t seed) {
  ratios.validate();
  std::map<std::pair<int, std::size_t>, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < items.size(); ++i) {
    strata[{static_cast<int>(items[i].region), items[i].digit}].push_back(i);
  }

  const std::array<double, 3> weights{ratios.train, ratios.val, ratios.test};
  constexpr std::array<Split, 3> kOrder{Split::Train, Split::Val, Split::Test};
  std::vector<Split> out(items.size(), Split::Unassigned);
  std::map<std::size_t, std::size_t> easy_train;

  for (auto& [key, members] : strata) {
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) { return items[a].id < items[b].id; });
    Rng rng(derive_seed({seed, static_cast<std::uint64_t>(key.first), key.second}));
    rng.shuffle(std::span<std::size_t>(members));
    const auto counts = apportion(members.size(), weights);
    std::size_t pos = 0;
    for (std::size_t s = 0; s < kOrder.size(); ++s) {
      for (std::size_t c = 0; c < counts[s]; ++c) out[members[pos++]] = kOrder[s];
    }
    if (key.first == static_cast<int>(Region::Easy)) easy_train[key.second] += counts[0];
  }

  if (min_easy_per_class > 0) {
    std::map<std::size_t, std::size_t> deficits;
    std::string message = "not enough easy training samples:";
    for (std::size_t digit = 0; digit < kNumDigits; ++digit) {
      const std::size_t have = easy_train.count(digit) ? easy_train.at(digit) : 0;
      if (have < min_easy_per_class) {
        deficits[digit] = min_easy_per_class - have;
        message += " digit " + std::to_string(digit) + " has " + std::to_string(have) + " (deficit " +
                   std::to_string(min_easy_per_class - have) + ");";
      }
    }
    if (!deficits.empty()) throw InfeasibleFloorError(message, std::move(deficits));
  }
  return out;
}

}  // namespace hlv::data
