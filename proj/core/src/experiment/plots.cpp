#include "hlv/experiment/plots.hpp"

#include <map>
#include <sstream>

#include <json.hpp>

#include "hlv/common/io.hpp"

namespace hlv::experiment {

namespace fs = std::filesystem;

namespace {

// Rows of `csv` grouped by the value of `column`; each group keeps the header.
std::map<std::string, std::string> split_by_column(const std::string& csv, const std::string& column) {
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  const auto names = split_csv_line(header);
  std::size_t col = names.size();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == column) col = i;
  }
  if (col == names.size()) throw std::runtime_error("emit_plot_data: no column '" + column + "'");
  std::map<std::string, std::string> groups;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    auto& g = groups[fields.at(col)];
    if (g.empty()) g = header + "\n";
    g += line + "\n";
  }
  return groups;
}

}  // namespace

std::vector<fs::path> emit_plot_data(const fs::path& run_dir) {
  const char* required[] = {"config.json", "data_map.csv", "jsd_series.csv", "alignment.csv"};
  std::vector<std::string> missing;
  for (const char* name : required) {
    if (!fs::is_regular_file(run_dir / name)) missing.push_back((run_dir / name).generic_string());
  }
  if (!missing.empty()) {
    std::string msg = "missing artifacts:";
    for (const auto& m : missing) msg += " " + m;
    throw MissingArtifactsError(msg, missing);
  }
  const auto config = nlohmann::json::parse(read_text_file(run_dir / "config.json"));
  const std::string regime = config.at("label_regime").get<std::string>();
  const fs::path out_dir = run_dir / "plots";
  std::vector<fs::path> written;

  const std::string map_csv = read_text_file(run_dir / "data_map.csv");
  std::map<std::string, std::string> strata;
  for (auto& [flag, text] : split_by_column(map_csv, "hlv")) {
    strata[flag == "true" ? "hlv" : flag == "false" ? "nohlv" : "unlabeled"] = std::move(text);
  }
  strata["all"] = map_csv;
  for (const auto& [stratum, text] : strata) {
    written.push_back(out_dir / ("data_map_" + regime + "_" + stratum + ".csv"));
    write_text_file(written.back(), text);
  }
  for (const auto& [stratum, text] : split_by_column(read_text_file(run_dir / "jsd_series.csv"), "stratum")) {
    written.push_back(out_dir / ("jsd_" + regime + "_" + stratum + ".csv"));
    write_text_file(written.back(), text);
  }
  written.push_back(out_dir / ("alignment_" + regime + ".csv"));
  write_text_file(written.back(), read_text_file(run_dir / "alignment.csv"));
  return written;
}

}  // namespace hlv::experiment
