#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hlv/eval/evaluate.hpp"

namespace hlv::eval {

struct ReportKey {
  std::string dataset;
  std::string eval_set;
  std::string training_target;
  std::string architecture;
  std::string stratum;
  std::string metric;

  auto operator<=>(const ReportKey&) const = default;
};

struct ReportCell {
  ReportKey key;
  double value = 0.0;
};

/// Every metric of one seeded run.
struct SeedReport {
  std::int64_t seed = 0;
  std::vector<ReportCell> cells;
};

/// Appends accuracy/kld/brier cells for each evaluated stratum.
void append_metrics(SeedReport& report, const StratifiedMetrics& metrics, const std::string& dataset,
                    const std::string& training_target, const std::string& architecture);

struct ReportRow {
  ReportKey key;
  double mean = 0.0;
  double std = 0.0;
  std::size_t n_seeds = 0;
};

struct EvaluationReport {
  std::vector<ReportRow> rows;
  std::vector<std::int64_t> seeds;

  const ReportRow* find(const ReportKey& key) const;
  /// dataset,eval_set,training_target,architecture,stratum,metric,mean,std,n_seeds
  std::string to_csv() const;
  std::string to_json() const;
};

/// Mean and population std per cell. Every report must carry the same set of
/// keys; rows come out sorted by key.
EvaluationReport aggregate_seeds(const std::vector<SeedReport>& reports);

}  // namespace hlv::eval
