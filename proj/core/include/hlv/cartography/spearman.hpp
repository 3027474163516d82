#pragma once

#include <span>
#include <string>
#include <vector>

namespace hlv::cartography {

struct AlignmentStat {
  double rho = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
  std::string pairing;  // e.g. "confidence~u_prop"
};

/// Ranks with ties sharing their average rank (1-based).
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman rank correlation (Pearson on average ranks) with a two-sided
/// p-value from the t-approximation on n-2 degrees of freedom. p-values below
/// 1e-300 are reported as 0. Throws when n < 3, lengths differ, or either input
/// is constant.
AlignmentStat spearman(std::span<const double> x, std::span<const double> y);

}  // namespace hlv::cartography
