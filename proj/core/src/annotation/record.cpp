#include "hlv/annotation/record.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

#include "hlv/common/io.hpp"

namespace hlv::annotation {

std::string to_string(Judgment j) {
  switch (j) {
    case Judgment::No: return "no";
    case Judgment::Yes: return "yes";
    case Judgment::Unsure: return "unsure";
  }
  return "no";
}

Judgment parse_judgment(std::string_view text) {
  if (text == "yes") return Judgment::Yes;
  if (text == "no") return Judgment::No;
  if (text == "unsure") return Judgment::Unsure;
  throw std::invalid_argument("invalid judgment '" + std::string(text) + "' (expected yes|no|unsure)");
}

std::size_t AnnotationRecord::count(Judgment j) const {
  return static_cast<std::size_t>(std::count(judgments.begin(), judgments.end(), j));
}

std::string to_json_line(const AnnotationRecord& record) {
  nlohmann::ordered_json j;
  j["image_id"] = record.image_id;
  j["annotator_id"] = record.annotator_id;
  nlohmann::ordered_json judgments = nlohmann::ordered_json::object();
  for (std::size_t d = 0; d < kNumDigits; ++d) judgments[std::to_string(d)] = to_string(record.judgments[d]);
  j["judgments"] = judgments;
  j["excluded"] = record.excluded;
  return j.dump();
}

AnnotationRecord parse_json_line(std::string_view line) {
  const auto j = nlohmann::json::parse(line);
  AnnotationRecord r;
  r.image_id = j.at("image_id").get<std::string>();
  r.annotator_id = j.at("annotator_id").get<std::string>();
  const auto& judgments = j.at("judgments");
  if (!judgments.is_object() || judgments.size() != kNumDigits) {
    throw std::invalid_argument("judgments must map exactly the ten digits 0-9");
  }
  for (std::size_t d = 0; d < kNumDigits; ++d) {
    const auto key = std::to_string(d);
    if (!judgments.contains(key)) throw std::invalid_argument("judgments missing digit " + key);
    r.judgments[d] = parse_judgment(judgments.at(key).get<std::string>());
  }
  r.excluded = j.value("excluded", false);
  return r;
}

std::string to_jsonl(std::span<const AnnotationRecord> records) {
  std::string out;
  for (const auto& r : records) {
    out += to_json_line(r);
    out.push_back('\n');
  }
  return out;
}

std::vector<AnnotationRecord> parse_jsonl(std::string_view text) {
  std::vector<AnnotationRecord> out;
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      out.push_back(parse_json_line(line));
    } catch (const std::exception& e) {
      throw std::invalid_argument("annotation line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<AnnotationRecord> read_jsonl(const std::filesystem::path& path) { return parse_jsonl(read_text_file(path)); }

}  // namespace hlv::annotation
