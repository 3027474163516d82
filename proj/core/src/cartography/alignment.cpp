#include "hlv/cartography/alignment.hpp"

#include <stdexcept>

#include "hlv/common/io.hpp"

namespace hlv::cartography {

std::string to_string(Stratum s) {
  switch (s) {
    case Stratum::All: return "all";
    case Stratum::Hlv: return "hlv";
    case Stratum::NoHlv: return "nohlv";
  }
  return "all";
}

const AlignmentRow* AlignmentReport::find(const std::string& pairing, Stratum stratum) const {
  for (const auto& r : rows) {
    if (r.stat.pairing == pairing && r.stratum == stratum) return &r;
  }
  return nullptr;
}

std::string AlignmentReport::to_csv() const {
  CsvWriter csv({"pairing", "stratum", "rho", "p", "n"});
  for (const auto& r : rows) {
    csv.field(r.stat.pairing).field(to_string(r.stratum)).field(r.stat.rho).field(r.stat.p_value).field(r.stat.n);
    csv.end_row();
  }
  return csv.str();
}

AlignmentReport alignment_report(std::span<const DataMapPoint> points,
                                 const std::map<std::string, annotation::ImageLabelSet>& labels,
                                 std::span<const Stratum> strata) {
  struct Joined {
    const DataMapPoint* point;
    const annotation::ImageLabelSet* labels;
  };
  std::vector<Joined> joined;
  for (const auto& p : points) {
    const auto it = labels.find(p.sample_id);
    if (it != labels.end()) joined.push_back({&p, &it->second});
  }
  if (joined.empty()) throw std::invalid_argument("alignment_report: no data-map point has human labels");

  AlignmentReport report;
  for (Stratum stratum : strata) {
    std::vector<double> conf, var, u_prop, u_mean;
    for (const auto& j : joined) {
      if (stratum == Stratum::Hlv && !j.labels->hlv) continue;
      if (stratum == Stratum::NoHlv && j.labels->hlv) continue;
      conf.push_back(j.point->confidence);
      var.push_back(j.point->variability);
      u_prop.push_back(j.labels->u_prop);
      u_mean.push_back(j.labels->u_mean);
    }
    const std::pair<const char*, const std::vector<double>*> dynamics[] = {{"confidence", &conf}, {"variability", &var}};
    const std::pair<const char*, const std::vector<double>*> proxies[] = {{"u_prop", &u_prop}, {"u_mean", &u_mean}};
    for (const auto& [pname, proxy] : proxies) {
      for (const auto& [dname, dyn] : dynamics) {
        const std::string pairing = std::string(dname) + "~" + pname;
        try {
          AlignmentStat stat = spearman(*dyn, *proxy);
          stat.pairing = pairing;
          report.rows.push_back({stratum, stat});
        } catch (const std::invalid_argument& e) {
          report.notes.push_back(pairing + " [" + to_string(stratum) + "]: " + e.what());
        }
      }
    }
  }
  return report;
}

}  // namespace hlv::cartography
