#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hlv/common/types.hpp"

namespace hlv::annotation {

enum class Judgment { No, Yes, Unsure };

std::string to_string(Judgment j);
/// Accepts "yes" | "no" | "unsure" (lower case).
Judgment parse_judgment(std::string_view text);

/// One annotator's verdict on each digit class of one image.
struct AnnotationRecord {
  std::string image_id;
  std::string annotator_id;
  std::array<Judgment, kNumDigits> judgments{};
  bool excluded = false;

  std::size_t count(Judgment j) const;
};

/// {"image_id", "annotator_id", "judgments": {"0": "yes", ..., "9": "no"}, "excluded"}.
std::string to_json_line(const AnnotationRecord& record);
/// Throws std::invalid_argument unless all ten digit keys carry a valid state.
AnnotationRecord parse_json_line(std::string_view line);

std::string to_jsonl(std::span<const AnnotationRecord> records);
std::vector<AnnotationRecord> parse_jsonl(std::string_view text);
std::vector<AnnotationRecord> read_jsonl(const std::filesystem::path& path);

}  // namespace hlv::annotation
