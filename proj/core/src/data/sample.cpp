#include "hlv/data/sample.hpp"

#include <stdexcept>

namespace hlv::data {

std::string to_string(Source source) {
  switch (source) {
    case Source::Mnist: return "mnist";
    case Source::Mukhoti: return "mukhoti";
    case Source::Other: return "other";
  }
  return "other";
}

std::string to_string(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
    case Split::Unassigned: return "unassigned";
  }
  return "unassigned";
}

Source parse_source(std::string_view text) {
  if (text == "mnist") return Source::Mnist;
  if (text == "mukhoti") return Source::Mukhoti;
  if (text == "other") return Source::Other;
  throw std::invalid_argument("unknown source: " + std::string(text));
}

Split parse_split(std::string_view text) {
  if (text == "train") return Split::Train;
  if (text == "val") return Split::Val;
  if (text == "test") return Split::Test;
  if (text == "unassigned" || text.empty()) return Split::Unassigned;
  throw std::invalid_argument("unknown split: " + std::string(text));
}

void validate(const ImageSample& sample) {
  for (float p : sample.pixels) {
    if (!(p >= 0.0f && p <= 1.0f)) throw std::invalid_argument("sample " + sample.id + ": pixel outside [0,1]");
  }
  require_normalized(sample.original_target, "original target of " + sample.id);
}

}  // namespace hlv::data
