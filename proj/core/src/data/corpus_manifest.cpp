#include "hlv/data/corpus_manifest.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <set>
#include <stdexcept>

#include "hlv/common/io.hpp"

namespace hlv::data {

namespace {

using ojson = nlohmann::ordered_json;

// Shortest decimal that round-trips the float, stored as a double.
double compact(float v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  double d = 0.0;
  std::from_chars(buf.data(), end, d);
  return d;
}

ojson image_json(const Pixels& px) {
  ojson rows = ojson::array();
  for (std::size_t r = 0; r < kImageSide; ++r) {
    ojson row = ojson::array();
    for (std::size_t c = 0; c < kImageSide; ++c) row.push_back(compact(px[r * kImageSide + c]));
    rows.push_back(std::move(row));
  }
  return ojson::array({rows});
}

Pixels parse_image(const nlohmann::json& j, const std::string& id) {
  const auto& channel = (j.size() == 1 && j[0].is_array() && j[0].size() == kImageSide) ? j[0] : j;
  if (channel.size() != kImageSide) throw std::invalid_argument(id + ": image must be [1,28,28]");
  Pixels px{};
  for (std::size_t r = 0; r < kImageSide; ++r) {
    if (channel[r].size() != kImageSide) throw std::invalid_argument(id + ": image must be [1,28,28]");
    for (std::size_t c = 0; c < kImageSide; ++c) px[r * kImageSide + c] = channel[r][c].get<float>();
  }
  return px;
}

Distribution parse_dist(const nlohmann::json& j, const std::string& what) {
  Distribution d = embed_digits(j.get<std::vector<double>>());
  require_normalized(d, what);
  return d;
}

}  // namespace

bool CuratedCorpus::fully_annotated() const {
  for (const auto& s : samples) {
    if (!s.labels) return false;
  }
  return !samples.empty();
}

std::vector<const CuratedSample*> CuratedCorpus::in_split(Split split) const {
  std::vector<const CuratedSample*> out;
  for (const auto& s : samples) {
    if (s.sample.split == split) out.push_back(&s);
  }
  return out;
}

std::size_t CuratedCorpus::merge_labels(const std::map<std::string, annotation::ImageLabelSet>& labels) {
  std::size_t merged = 0;
  for (auto& s : samples) {
    const auto it = labels.find(s.sample.id);
    if (it == labels.end()) continue;
    s.labels = it->second;
    ++merged;
  }
  return merged;
}

std::string CuratedCorpus::to_json() const {
  ojson root;
  root["name"] = name;
  ojson arr = ojson::array();
  for (const auto& cs : samples) {
    const auto& s = cs.sample;
    ojson j;
    j["images"] = image_json(s.pixels);
    j["original_labels"] = s.original_target;
    j["indices"] = cs.index;
    j["file_name"] = s.file_name;
    if (cs.labels) {
      j["human_uncert_mean"] = cs.labels->u_mean;
      j["pct_ann_unsure"] = cs.labels->u_prop;
      j["soft_label_yes_unc_equal"] = cs.labels->soft_e;
      j["soft_label"] = cs.labels->soft_w;
      j["soft_label_argmax"] = cs.labels->maj_n;
    } else {
      j["human_uncert_mean"] = nullptr;
      j["pct_ann_unsure"] = nullptr;
      j["soft_label_yes_unc_equal"] = nullptr;
      j["soft_label"] = nullptr;
      j["soft_label_argmax"] = nullptr;
    }
    j["split"] = to_string(s.split);
    j["source"] = to_string(s.source);
    j["id"] = s.id;
    j["region"] = to_string(cs.region);
    j["n_annotators"] = cs.labels ? cs.labels->n_annotators : 0;
    arr.push_back(std::move(j));
  }
  root["samples"] = std::move(arr);
  return root.dump();
}

CuratedCorpus CuratedCorpus::from_json(std::string_view text) {
  const auto root = nlohmann::json::parse(text);
  CuratedCorpus corpus;
  corpus.name = root.value("name", std::string());
  std::set<std::string> seen;
  for (const auto& j : root.at("samples")) {
    CuratedSample cs;
    auto& s = cs.sample;
    s.id = j.at("id").get<std::string>();
    if (!seen.insert(s.id).second) throw std::invalid_argument("duplicate sample id " + s.id);
    s.pixels = parse_image(j.at("images"), s.id);
    s.original_target = parse_dist(j.at("original_labels"), "original_labels of " + s.id);
    s.file_name = j.value("file_name", std::string());
    s.split = parse_split(j.value("split", std::string("unassigned")));
    s.source = parse_source(j.value("source", std::string("mnist")));
    cs.index = j.value("indices", std::size_t{0});
    cs.region = parse_region(j.value("region", std::string("unfiltered")));
    if (j.contains("soft_label") && !j.at("soft_label").is_null()) {
      annotation::ImageLabelSet l;
      l.soft_w = parse_dist(j.at("soft_label"), "soft_label of " + s.id);
      l.soft_e = parse_dist(j.at("soft_label_yes_unc_equal"), "soft_label_yes_unc_equal of " + s.id);
      l.maj_n = parse_dist(j.at("soft_label_argmax"), "soft_label_argmax of " + s.id);
      l.u_mean = j.at("human_uncert_mean").get<double>();
      l.u_prop = j.at("pct_ann_unsure").get<double>();
      l.n_annotators = j.value("n_annotators", std::size_t{0});
      l.hlv = support_size(l.soft_w) > 1;
      cs.labels = l;
    }
    validate(s);
    corpus.samples.push_back(std::move(cs));
  }
  return corpus;
}

void CuratedCorpus::save(const std::filesystem::path& path) const { write_text_file(path, to_json()); }

CuratedCorpus CuratedCorpus::load(const std::filesystem::path& path) { return from_json(read_text_file(path)); }

}  // namespace hlv::data
