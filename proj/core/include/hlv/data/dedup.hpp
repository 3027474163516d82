#pragma once

#include <span>
#include <string>
#include <vector>

#include "hlv/data/sample.hpp"

namespace hlv::data {

struct DuplicateEntry {
  std::string removed_id;
  std::string kept_id;
};

/// A retained sample whose pixels also occur in the second corpus.
struct LeakageEntry {
  std::string id;
  std::string other_id;
};

struct DedupReport {
  std::vector<DuplicateEntry> duplicates;
  std::vector<LeakageEntry> leakage;

  /// "kind,id,other_id" with kind duplicate|leakage.
  std::string to_csv() const;
};

struct DedupResult {
  std::vector<ImageSample> unique;
  DedupReport report;
};

/// Removes exact pixel duplicates. In every group of identical images the
/// smallest id is kept; retained samples keep their input order. When `other`
/// is non-empty, overlaps with it are reported but never removed.
DedupResult deduplicate(std::span<const ImageSample> samples, std::span<const ImageSample> other = {});

}  // namespace hlv::data
