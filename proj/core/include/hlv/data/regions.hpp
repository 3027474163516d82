#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hlv/nn/dynamics_log.hpp"

namespace hlv::data {

enum class Region { Easy, Hard, Ambiguous, Unfiltered };

std::string to_string(Region region);
Region parse_region(std::string_view text);

/// Confidence (mu) / variability (sigma) predicates over the first
/// `horizon_epochs` epochs of a probe run.
struct CartographyThresholds {
  struct Easy {
    double mu_min;
    double sigma_max;
  } easy;
  struct Hard {
    double mu_max;
    double sigma_max;
  } hard;
  struct Ambiguous {
    double mu_lo;
    double mu_hi;
    double sigma_min;
  } ambiguous;
  std::size_t horizon_epochs;

  static CartographyThresholds mnist();
  static CartographyThresholds mukhoti();

  void validate() const;
  /// easy: mu > mu_min, sigma < sigma_max; hard: mu < mu_max, sigma < sigma_max;
  /// ambiguous: mu_lo <= mu <= mu_hi, sigma > sigma_min; otherwise unfiltered.
  Region classify(double mu, double sigma) const;
};

struct RegionAssignment {
  std::string sample_id;
  double mu = 0.0;
  double sigma = 0.0;
  Region region = Region::Unfiltered;
};

/// Per-sample mean and population std of p_target over epochs 1..horizon (all
/// seeds in the log pooled). Result sorted by sample id. Throws if any sample
/// lacks one of those epochs for a seed present in the log.
std::vector<RegionAssignment> assign_regions(const nn::DynamicsLog& log, const CartographyThresholds& thresholds);

}  // namespace hlv::data
