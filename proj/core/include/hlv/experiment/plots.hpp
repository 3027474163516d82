#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace hlv::experiment {

class MissingArtifactsError : public std::runtime_error {
 public:
  MissingArtifactsError(const std::string& message, std::vector<std::string> missing)
      : std::runtime_error(message), missing_(std::move(missing)) {}
  const std::vector<std::string>& missing() const { return missing_; }

 private:
  std::vector<std::string> missing_;
};

/// Splits a finished run's data_map.csv and jsd_series.csv per stratum and
/// copies alignment.csv into `<run>/plots/`:
///   data_map_<regime>_<stratum>.csv, jsd_<regime>_<stratum>.csv, alignment_<regime>.csv
/// Returns the written paths. Throws MissingArtifactsError listing every absent input.
std::vector<std::filesystem::path> emit_plot_data(const std::filesystem::path& run_dir);

}  // namespace hlv::experiment
