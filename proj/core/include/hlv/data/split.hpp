#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hlv/data/regions.hpp"
#include "hlv/data/sample.hpp"

namespace hlv::data {

struct SplitRatios {
  double train = 1.0;
  double val = 0.0;
  double test = 0.0;

  /// Ratios proportional to target split sizes, e.g. (2131, 457, 457).
  static SplitRatios from_counts(std::size_t train, std::size_t val, std::size_t test);
  void validate() const;
};

struct StratifiedItem {
  std::string id;
  std::size_t digit = 0;
  Region region = Region::Easy;
};

/// Raised when the training split cannot hold the requested easy floor.
class InfeasibleFloorError : public std::runtime_error {
 public:
  InfeasibleFloorError(const std::string& message, std::map<std::size_t, std::size_t> deficits)
      : std::runtime_error(message), deficits_(std::move(deficits)) {}
  /// digit -> missing easy training samples
  const std::map<std::size_t, std::size_t>& deficits() const { return deficits_; }

 private:
  std::map<std::size_t, std::size_t> deficits_;
};

/// Splits within every (region, digit) stratum by largest-remainder rounding
/// (remainder ties go to train, then val, then test), so each stratum's split
/// counts differ from exact proportionality by less than one. Members of a
/// stratum are ordered by id and shuffled with a generator derived from
/// (seed, stratum). Returns one split per input item, in input order.
std::vector<Split> stratified_split(std::span<const StratifiedItem> items, const SplitRatios& ratios,
                                    std::size_t min_easy_per_class, std::uint64_t seed);

/// Largest-remainder apportionment of `n` items over `weights` (summing to 1).
std::vector<std::size_t> apportion(std::size_t n, std::span<const double> weights);

}  // namespace hlv::data
