#include "hlv/data/dedup.hpp"

#include <cstring>
#include <functional>
#include <string_view>
#include <unordered_map>

#include "hlv/common/io.hpp"

namespace hlv::data {

namespace {

std::string_view pixel_bytes(const ImageSample& s) {
  return {reinterpret_cast<const char*>(s.pixels.data()), sizeof(Pixels)};
}

bool same_pixels(const ImageSample& a, const ImageSample& b) {
  return std::memcmp(a.pixels.data(), b.pixels.data(), sizeof(Pixels)) == 0;
}

using Buckets = std::unordered_map<std::size_t, std::vector<std::size_t>>;

Buckets bucket(std::span<const ImageSample> samples) {
  Buckets buckets;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    buckets[std::hash<std::string_view>{}(pixel_bytes(samples[i]))].push_back(i);
  }
  return buckets;
}

}  // namespace

std::string DedupReport::to_csv() const {
  CsvWriter csv({"kind", "id", "other_id"});
  for (const auto& d : duplicates) {
    csv.field("duplicate").field(d.removed_id).field(d.kept_id);
    csv.end_row();
  }
  for (const auto& l : leakage) {
    csv.field("leakage").field(l.id).field(l.other_id);
    csv.end_row();
  }
  return csv.str();
}

DedupResult deduplicate(std::span<const ImageSample> samples, std::span<const ImageSample> other) {
  const Buckets buckets = bucket(samples);
  // keeper[i] == i for retained samples, else the index of the retained twin.
  std::vector<std::size_t> keeper(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& candidates = buckets.at(std::hash<std::string_view>{}(pixel_bytes(samples[i])));
    std::size_t best = i;
    for (std::size_t j : candidates) {
      if (same_pixels(samples[i], samples[j]) && samples[j].id < samples[best].id) best = j;
    }
    keeper[i] = best;
  }

  DedupResult result;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (keeper[i] == i) {
      result.unique.push_back(samples[i]);
    } else {
      result.report.duplicates.push_back({samples[i].id, samples[keeper[i]].id});
    }
  }

  if (!other.empty()) {
    const Buckets other_buckets = bucket(other);
    for (const auto& s : result.unique) {
      const auto it = other_buckets.find(std::hash<std::string_view>{}(pixel_bytes(s)));
      if (it == other_buckets.end()) continue;
      for (std::size_t j : it->second) {
        if (same_pixels(s, other[j])) result.report.leakage.push_back({s.id, other[j].id});
      }
    }
  }
  return result;
}

}  // namespace hlv::data
