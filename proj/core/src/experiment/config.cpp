#include "hlv/experiment/config.hpp"

#include <set>
#include <stdexcept>

#include <json.hpp>

#include "hlv/common/io.hpp"

namespace hlv::experiment {

using nlohmann::ordered_json;

std::string to_string(LabelRegime regime) {
  switch (regime) {
    case LabelRegime::Orig: return "orig";
    case LabelRegime::Synth: return "synth";
    case LabelRegime::MajN: return "maj_n";
    case LabelRegime::SoftW: return "soft_w";
    case LabelRegime::SoftE: return "soft_e";
  }
  return "orig";
}

LabelRegime parse_regime(std::string_view text) {
  for (auto r : {LabelRegime::Orig, LabelRegime::Synth, LabelRegime::MajN, LabelRegime::SoftW, LabelRegime::SoftE}) {
    if (text == to_string(r)) return r;
  }
  throw std::invalid_argument("unknown label regime '" + std::string(text) + "'");
}

std::string to_string(nn::TrainRegime regime) {
  return regime == nn::TrainRegime::Dynamics ? "dynamics" : "test_performance";
}

nn::TrainRegime parse_train_regime(std::string_view text) {
  if (text == "dynamics") return nn::TrainRegime::Dynamics;
  if (text == "test_performance") return nn::TrainRegime::TestPerformance;
  throw std::invalid_argument("unknown training regime '" + std::string(text) + "'");
}

void SimAnnotatorModel::validate() const {
  if (count_weights.empty()) throw std::invalid_argument("SimAnnotatorModel: no annotator counts");
  double total = 0.0;
  for (const auto& [n, w] : count_weights) {
    if (n < 3 || n > 10) throw std::invalid_argument("SimAnnotatorModel: annotator counts must lie in [3, 10]");
    if (!(w >= 0.0)) throw std::invalid_argument("SimAnnotatorModel: negative count weight");
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("SimAnnotatorModel: count weights sum to zero");
  if (!(unsure_threshold > 0.0 && unsure_threshold <= 1.0)) {
    throw std::invalid_argument("SimAnnotatorModel: unsure_threshold must be in (0, 1]");
  }
  if (!(noise_rate >= 0.0 && noise_rate <= 1.0)) throw std::invalid_argument("SimAnnotatorModel: noise_rate must be in [0, 1]");
}

void ExperimentConfig::validate() const {
  if (seeds.empty()) throw std::invalid_argument("config: seed list is empty");
  if (std::set<std::int64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    throw std::invalid_argument("config: seeds must be distinct");
  }
  if (corpus.empty()) throw std::invalid_argument("config: corpus path is required");
  if (workers == 0) throw std::invalid_argument("config: workers must be >= 1");
  if (eval_sets.empty()) throw std::invalid_argument("config: no evaluation sets");
  if (normalization && !(normalization->std > 0.0)) throw std::invalid_argument("config: normalization std must be > 0");
  if (arch.output_dim != kNumClasses) throw std::invalid_argument("config: output_dim must be 11");
  training.validate();
}

std::string ExperimentConfig::to_json() const {
  ordered_json j;
  j["name"] = name;
  j["dataset"] = dataset;
  j["corpus"] = corpus.generic_string();
  j["annotations"] = annotations ? ordered_json(annotations->generic_string()) : ordered_json(nullptr);
  if (normalization) {
    j["normalization"] = {{"mean", normalization->mean}, {"std", normalization->std}};
  } else {
    j["normalization"] = nullptr;
  }
  j["label_regime"] = to_string(label_regime);
  j["arch"] = nn::to_string(arch.kind);
  ordered_json t;
  t["regime"] = to_string(training.regime);
  t["learning_rate"] = training.learning_rate;
  t["batch_size"] = training.batch_size;
  t["max_epochs"] = training.max_epochs;
  t["fixed_epochs"] = training.fixed_epochs ? ordered_json(*training.fixed_epochs) : ordered_json(nullptr);
  t["early_stop_patience"] = training.early_stop_patience;
  t["plateau"] = {{"factor", training.plateau.factor},
                  {"patience", training.plateau.patience},
                  {"min_delta", training.plateau.min_delta}};
  t["adam"] = {{"beta1", training.adam.beta1}, {"beta2", training.adam.beta2}, {"epsilon", training.adam.epsilon}};
  j["training"] = t;
  j["seeds"] = seeds;
  auto& ev = j["eval_sets"] = ordered_json::array();
  for (auto e : eval_sets) ev.push_back(eval::to_string(e));
  j["output_dir"] = output_dir.generic_string();
  j["workers"] = workers;
  return j.dump(2) + "\n";
}

ExperimentConfig ExperimentConfig::from_json(std::string_view text, const std::filesystem::path& base_dir) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  static const std::set<std::string> known{"name", "dataset", "corpus", "annotations", "normalization",
                                           "label_regime", "arch", "training", "seeds", "eval_sets",
                                           "output_dir", "workers"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  const auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };
  ExperimentConfig c;
  try {
    c.name = j.value("name", c.name);
    c.dataset = j.value("dataset", c.dataset);
    if (j.contains("corpus")) c.corpus = resolve(j.at("corpus").get<std::string>());
    if (j.contains("annotations") && !j.at("annotations").is_null()) {
      c.annotations = resolve(j.at("annotations").get<std::string>());
    }
    if (j.contains("normalization") && !j.at("normalization").is_null()) {
      const auto& n = j.at("normalization");
      c.normalization = data::Normalization{n.at("mean").get<double>(), n.at("std").get<double>()};
    }
    if (j.contains("label_regime")) c.label_regime = parse_regime(j.at("label_regime").get<std::string>());
    if (j.contains("arch")) c.arch.kind = nn::parse_arch(j.at("arch").get<std::string>());
    if (j.contains("training")) {
      const auto& t = j.at("training");
      auto& tr = c.training;
      if (t.contains("regime")) tr.regime = parse_train_regime(t.at("regime").get<std::string>());
      tr.learning_rate = t.value("learning_rate", tr.learning_rate);
      tr.batch_size = t.value("batch_size", tr.batch_size);
      tr.max_epochs = t.value("max_epochs", tr.max_epochs);
      if (t.contains("fixed_epochs") && !t.at("fixed_epochs").is_null()) {
        tr.fixed_epochs = t.at("fixed_epochs").get<std::size_t>();
      }
      tr.early_stop_patience = t.value("early_stop_patience", tr.early_stop_patience);
      if (t.contains("plateau")) {
        const auto& p = t.at("plateau");
        tr.plateau.factor = p.value("factor", tr.plateau.factor);
        tr.plateau.patience = p.value("patience", tr.plateau.patience);
        tr.plateau.min_delta = p.value("min_delta", tr.plateau.min_delta);
      }
      if (t.contains("adam")) {
        const auto& a = t.at("adam");
        tr.adam.beta1 = a.value("beta1", tr.adam.beta1);
        tr.adam.beta2 = a.value("beta2", tr.adam.beta2);
        tr.adam.epsilon = a.value("epsilon", tr.adam.epsilon);
      }
    }
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::int64_t>>();
    if (j.contains("eval_sets")) {
      c.eval_sets.clear();
      for (const auto& e : j.at("eval_sets")) c.eval_sets.push_back(eval::parse_eval_target(e.get<std::string>()));
    }
    if (j.contains("output_dir")) c.output_dir = resolve(j.at("output_dir").get<std::string>());
    c.workers = j.value("workers", c.workers);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  return from_json(read_text_file(path), path.parent_path());
}

std::string ExperimentConfig::hash() const {
  auto j = ordered_json::parse(to_json());
  j.erase("output_dir");
  j.erase("workers");
  return sha256_hex(j.dump());
}

Distribution regime_target(LabelRegime regime, const data::ImageSample& sample,
                           const annotation::ImageLabelSet* labels) {
  switch (regime) {
    case LabelRegime::Orig:
      return one_hot(data::original_digit(sample));
    case LabelRegime::Synth:
      if (sample.source == data::Source::Mnist) {
        throw std::invalid_argument("regime synth is only defined for synthetic sources (sample " + sample.id + ")");
      }
      return sample.original_target;
    default:
      break;
  }
  if (labels == nullptr) {
    throw std::invalid_argument("regime " + to_string(regime) + " needs human labels for sample " + sample.id);
  }
  if (regime == LabelRegime::MajN) return labels->maj_n;
  if (regime == LabelRegime::SoftW) return labels->soft_w;
  return labels->soft_e;
}

}  // namespace hlv::experiment
