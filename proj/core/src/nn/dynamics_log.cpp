#include "hlv/nn/dynamics_log.hpp"

#include <json.hpp>

#include <set>
#include <stdexcept>

#include "hlv/common/io.hpp"

namespace hlv::nn {

std::size_t DynamicsLog::epoch_count() const {
  std::set<std::size_t> epochs;
  for (const auto& f : frames) epochs.insert(f.epoch);
  return epochs.size();
}

std::string DynamicsLog::to_jsonl() const {
  std::string out;
  out.reserve(frames.size() * 256);
  for (const auto& f : frames) {
    nlohmann::ordered_json line;
    line["seed"] = f.seed;
    line["epoch"] = f.epoch;
    line["sample_id"] = f.sample_id;
    line["p_target"] = f.p_target;
    line["pred"] = f.pred;
    out += line.dump();
    out.push_back('\n');
  }
  return out;
}

void DynamicsLog::write_jsonl(const std::filesystem::path& path) const { write_text_file(path, to_jsonl()); }

DynamicsLog DynamicsLog::from_jsonl(std::string_view text) {
  DynamicsLog log;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      DynamicsFrame f;
      f.seed = j.at("seed").get<std::int64_t>();
      f.epoch = j.at("epoch").get<std::size_t>();
      f.sample_id = j.at("sample_id").get<std::string>();
      f.p_target = j.at("p_target").get<double>();
      const auto pred = j.at("pred").get<std::vector<double>>();
      if (pred.size() != kNumClasses) throw std::invalid_argument("pred must have 11 entries");
      std::copy(pred.begin(), pred.end(), f.pred.begin());
      log.frames.push_back(std::move(f));
    } catch (const std::exception& e) {
      throw std::runtime_error("dynamics log line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return log;
}

DynamicsLog DynamicsLog::read_jsonl(const std::filesystem::path& path) {
  return from_jsonl(read_text_file(path));
}

}  // namespace hlv::nn
