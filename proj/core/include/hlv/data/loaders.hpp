#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hlv/data/sample.hpp"

namespace hlv::data {

/// Reads an IDX image/label pair (magics 0x00000803 / 0x00000801, big-endian).
/// Ids are `id_prefix` + zero-padded file position.
std::vector<ImageSample> load_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
                                  Source source, const std::string& id_prefix);

/// Loads every PNG named in a JSON label manifest {"file.png": digit | [10 or 11 probabilities]}.
/// Ids are `id_prefix` + file stem; order follows the (sorted) manifest keys.
std::vector<ImageSample> load_png_directory(const std::filesystem::path& directory,
                                            const std::filesystem::path& label_manifest, Source source,
                                            const std::string& id_prefix);

/// Corpus manifest:
///   {"entries": [{"type": "idx", "images": ..., "labels": ..., "source": ..., "id_prefix": ...},
///                {"type": "png", "directory": ..., "labels": ..., "source": ..., "id_prefix": ...}]}
/// Relative paths resolve against the manifest's directory. No entries gives an empty corpus.
std::vector<ImageSample> load_corpus(const std::filesystem::path& manifest);

}  // namespace hlv::data
