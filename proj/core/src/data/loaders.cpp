#include "hlv/data/loaders.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <stdexcept>

#include "hlv/common/io.hpp"
#include "hlv/data/png_codec.hpp"

namespace hlv::data {

namespace {

constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

std::uint32_t read_be32(const std::string& bytes, std::size_t offset, const std::filesystem::path& path) {
  if (offset + 4 > bytes.size()) throw std::runtime_error("truncated IDX header in " + path.string());
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + offset);
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

std::string padded_index(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%05zu", i);
  return buf;
}

Distribution parse_label(const nlohmann::json& value, const std::string& key) {
  if (value.is_number_integer()) {
    const auto digit = value.get<long long>();
    if (digit < 0 || digit > static_cast<long long>(kNanClass)) {
      throw std::invalid_argument("label for " + key + " out of range");
    }
    return one_hot(static_cast<std::size_t>(digit));
  }
  const auto probs = value.get<std::vector<double>>();
  Distribution d = embed_digits(probs);
  require_normalized(d, "label distribution for " + key);
  return d;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

std::vector<ImageSample> load_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
                                  Source source, const std::string& id_prefix) {
  const std::string img = read_text_file(images);
  const std::string lab = read_text_file(labels);
  if (read_be32(img, 0, images) != kIdxImagesMagic) throw std::runtime_error("bad IDX image magic in " + images.string());
  if (read_be32(lab, 0, labels) != kIdxLabelsMagic) throw std::runtime_error("bad IDX label magic in " + labels.string());
  const std::size_t count = read_be32(img, 4, images);
  const std::size_t rows = read_be32(img, 8, images);
  const std::size_t cols = read_be32(img, 12, images);
  const std::size_t label_count = read_be32(lab, 4, labels);
  if (count != label_count) {
    throw std::runtime_error("IDX image count " + std::to_string(count) + " != label count " +
                             std::to_string(label_count));
  }
  if (rows != kImageSide || cols != kImageSide) {
    throw std::runtime_error("IDX images are " + std::to_string(rows) + "x" + std::to_string(cols) + ", expected 28x28");
  }
  if (img.size() < 16 + count * kNumPixels || lab.size() < 8 + count) {
    throw std::runtime_error("truncated IDX payload");
  }

  std::vector<ImageSample> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    ImageSample& s = out[i];
    s.id = id_prefix + padded_index(i);
    s.source = source;
    s.file_name = std::to_string(i) + ".png";
    const auto* px = reinterpret_cast<const unsigned char*>(img.data() + 16 + i * kNumPixels);
    for (std::size_t k = 0; k < kNumPixels; ++k) s.pixels[k] = static_cast<float>(px[k]) / 255.0f;
    const auto label = static_cast<unsigned char>(lab[8 + i]);
    if (label > 9) throw std::runtime_error("IDX label " + std::to_string(label) + " out of range at " + std::to_string(i));
    s.original_target = one_hot(label);
  }
  return out;
}

std::vector<ImageSample> load_png_directory(const std::filesystem::path& directory,
                                            const std::filesystem::path& label_manifest, Source source,
                                            const std::string& id_prefix) {
  const auto labels = nlohmann::json::parse(read_text_file(label_manifest));
  if (!labels.is_object()) throw std::invalid_argument("PNG label manifest must be a JSON object");
  std::vector<ImageSample> out;
  for (const auto& [file, value] : labels.items()) {
    const GrayImage g = decode_png(read_text_file(directory / file));
    if (g.width != kImageSide || g.height != kImageSide) {
      throw std::runtime_error(file + " is " + std::to_string(g.width) + "x" + std::to_string(g.height) +
                               ", expected 28x28");
    }
    ImageSample s;
    s.id = id_prefix + std::filesystem::path(file).stem().string();
    s.source = source;
    s.file_name = file;
    for (std::size_t k = 0; k < kNumPixels; ++k) s.pixels[k] = static_cast<float>(g.pixels[k]) / 255.0f;
    s.original_target = parse_label(value, file);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ImageSample> load_corpus(const std::filesystem::path& manifest) {
  const auto j = nlohmann::json::parse(read_text_file(manifest));
  const auto base = manifest.parent_path();
  std::vector<ImageSample> corpus;
  if (!j.contains("entries")) return corpus;
  for (const auto& entry : j.at("entries")) {
    const auto type = entry.at("type").get<std::string>();
    const Source source = parse_source(entry.value("source", std::string("mnist")));
    const std::string prefix = entry.value("id_prefix", std::string());
    std::vector<ImageSample> part;
    if (type == "idx") {
      part = load_idx(resolve(base, entry.at("images").get<std::string>()),
                      resolve(base, entry.at("labels").get<std::string>()), source, prefix);
    } else if (type == "png") {
      part = load_png_directory(resolve(base, entry.at("directory").get<std::string>()),
                                resolve(base, entry.at("labels").get<std::string>()), source, prefix);
    } else {
      throw std::invalid_argument("unknown corpus entry type: " + type);
    }
    corpus.insert(corpus.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return corpus;
}

}  // namespace hlv::data
