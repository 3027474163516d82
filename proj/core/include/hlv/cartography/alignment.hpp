#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "hlv/annotation/aggregate.hpp"
#include "hlv/cartography/data_map.hpp"
#include "hlv/cartography/spearman.hpp"

namespace hlv::cartography {

enum class Stratum { All, Hlv, NoHlv };

std::string to_string(Stratum s);

struct AlignmentRow {
  Stratum stratum = Stratum::All;
  AlignmentStat stat;
};

struct AlignmentReport {
  std::vector<AlignmentRow> rows;
  /// Pairings that could not be computed (too few samples or constant input).
  std::vector<std::string> notes;

  const AlignmentRow* find(const std::string& pairing, Stratum stratum) const;
  /// "pairing,stratum,rho,p,n" CSV.
  std::string to_csv() const;
};

/// Spearman of confidence and variability against u_prop and u_mean, per
/// stratum. Points and label sets join on sample id; throws on an empty join.
AlignmentReport alignment_report(std::span<const DataMapPoint> points,
                                 const std::map<std::string, annotation::ImageLabelSet>& labels,
                                 std::span<const Stratum> strata);

}  // namespace hlv::cartography
