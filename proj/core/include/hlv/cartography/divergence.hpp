#pragma once

#include <set>
#include <string>
#include <vector>

#include "hlv/common/types.hpp"
#include "hlv/nn/dynamics_log.hpp"

namespace hlv::cartography {

/// Jensen-Shannon divergence in bits: symmetric, in [0, 1]. Inputs must be
/// normalized to 1e-9.
double jsd(const Distribution& p, const Distribution& q);

/// Entry e-1 is the mean over samples of jsd(pred at epoch e, pred at epoch e-1),
/// for e = 2..E. The log must hold a single seed and at least two epochs.
/// A non-empty `subset` restricts the mean to those sample ids.
std::vector<double> jsd_series(const nn::DynamicsLog& log, const std::set<std::string>& subset = {});

}  // namespace hlv::cartography
