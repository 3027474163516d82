#include "hlv/eval/report.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "hlv/common/io.hpp"

namespace hlv::eval {

void append_metrics(SeedReport& report, const StratifiedMetrics& metrics, const std::string& dataset,
                    const std::string& training_target, const std::string& architecture) {
  for (const auto& row : metrics.rows) {
    ReportKey key{dataset, to_string(metrics.target), training_target, architecture,
                  cartography::to_string(row.stratum), ""};
    key.metric = "accuracy";
    report.cells.push_back({key, row.accuracy});
    key.metric = "kld";
    report.cells.push_back({key, row.kld});
    key.metric = "brier";
    report.cells.push_back({key, row.brier});
  }
}

const ReportRow* EvaluationReport::find(const ReportKey& key) const {
  for (const auto& r : rows) {
    if (r.key == key) return &r;
  }
  return nullptr;
}

std::string EvaluationReport::to_csv() const {
  CsvWriter csv({"dataset", "eval_set", "training_target", "architecture", "stratum", "metric", "mean", "std", "n_seeds"});
  for (const auto& r : rows) {
    csv.field(r.key.dataset).field(r.key.eval_set).field(r.key.training_target).field(r.key.architecture);
    csv.field(r.key.stratum).field(r.key.metric).field(r.mean).field(r.std).field(r.n_seeds);
    csv.end_row();
  }
  return csv.str();
}

std::string EvaluationReport::to_json() const {
  nlohmann::ordered_json j;
  j["seeds"] = seeds;
  auto& arr = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"dataset", r.key.dataset},
                   {"eval_set", r.key.eval_set},
                   {"training_target", r.key.training_target},
                   {"architecture", r.key.architecture},
                   {"stratum", r.key.stratum},
                   {"metric", r.key.metric},
                   {"mean", r.mean},
                   {"std", r.std},
                   {"n_seeds", r.n_seeds}});
  }
  return j.dump(2) + "\n";
}

EvaluationReport aggregate_seeds(const std::vector<SeedReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("aggregate_seeds: no reports");
  std::map<ReportKey, std::vector<double>> cells;
  for (const auto& c : reports.front().cells) {
    if (!cells.emplace(c.key, std::vector<double>{}).second) {
      throw std::invalid_argument("aggregate_seeds: duplicate cell " + c.key.metric + "/" + c.key.stratum);
    }
  }
  for (const auto& rep : reports) {
    if (rep.cells.size() != cells.size()) throw std::invalid_argument("aggregate_seeds: reports have different axes");
    for (const auto& c : rep.cells) {
      const auto it = cells.find(c.key);
      if (it == cells.end()) throw std::invalid_argument("aggregate_seeds: reports have different axes");
      it->second.push_back(c.value);
    }
  }
  EvaluationReport out;
  for (const auto& rep : reports) out.seeds.push_back(rep.seed);
  for (const auto& [key, values] : cells) {
    if (values.size() != reports.size()) throw std::invalid_argument("aggregate_seeds: reports have different axes");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size());
    out.rows.push_back({key, mean, std::sqrt(var), values.size()});
  }
  return out;
}

}  // namespace hlv::eval
