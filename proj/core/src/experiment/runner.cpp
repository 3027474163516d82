#include "hlv/experiment/runner.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "hlv/annotation/record.hpp"
#include "hlv/cartography/divergence.hpp"
#include "hlv/common/io.hpp"
#include "hlv/common/rng.hpp"
#include "hlv/data/normalize.hpp"
#include "hlv/nn/trainer.hpp"

namespace hlv::experiment {

namespace fs = std::filesystem;

namespace {

constexpr cartography::Stratum kStrata[] = {cartography::Stratum::All, cartography::Stratum::Hlv,
                                            cartography::Stratum::NoHlv};
constexpr std::size_t kMapEpochs = 5;

struct SplitData {
  std::vector<const data::CuratedSample*> samples;
  nn::TrainingSet set;
};

SplitData make_split(const data::CuratedCorpus& corpus, data::Split split, LabelRegime regime,
                     data::Normalization norm) {
  SplitData out;
  out.samples = corpus.in_split(split);
  std::vector<data::ImageSample> images;
  images.reserve(out.samples.size());
  for (const auto* cs : out.samples) images.push_back(cs->sample);
  out.set.inputs = data::normalize(images, norm);
  out.set.targets = nn::Matrix(static_cast<Eigen::Index>(images.size()), static_cast<Eigen::Index>(kNumClasses));
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    const auto* cs = out.samples[i];
    out.set.ids.push_back(cs->sample.id);
    const auto t = regime_target(regime, cs->sample, cs->labels ? &*cs->labels : nullptr);
    for (std::size_t k = 0; k < kNumClasses; ++k) {
      out.set.targets(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = t[k];
    }
  }
  return out;
}

struct SeedOutcome {
  bool ok = false;
  std::string error;
  eval::SeedReport report;
  nn::DynamicsLog dynamics;
};

std::string rel(const fs::path& p, const fs::path& base) { return p.lexically_relative(base).generic_string(); }

}  // namespace

data::Normalization default_normalization(const data::CuratedCorpus& corpus) {
  std::set<data::Source> sources;
  for (const auto& cs : corpus.samples) sources.insert(cs.sample.source);
  if (sources.size() == 1 && *sources.begin() == data::Source::Mnist) return data::kMnistNormalization;
  if (sources.size() == 1 && *sources.begin() == data::Source::Mukhoti) return data::kMukhotiNormalization;
  std::vector<data::ImageSample> train;
  for (const auto* cs : corpus.in_split(data::Split::Train)) train.push_back(cs->sample);
  if (train.empty()) throw std::invalid_argument("cannot fit normalization: empty training split");
  return data::fit_normalization(train);
}

RunResult run(const ExperimentConfig& config, const ProgressFn& progress) {
  config.validate();
  return run(config, data::CuratedCorpus::load(config.corpus), progress);
}

RunResult run(const ExperimentConfig& config, data::CuratedCorpus corpus, const ProgressFn& progress) {
  config.validate();
  const auto say = [&](const std::string& msg) {
    if (progress) progress(msg);
  };

  if (config.annotations) {
    const auto records = annotation::read_jsonl(*config.annotations);
    corpus.merge_labels(annotation::aggregate_all(records));
  }
  if (config.label_regime == LabelRegime::Synth) {
    for (const auto& cs : corpus.samples) {
      if (cs.sample.source == data::Source::Mnist) {
        throw std::invalid_argument("label regime synth is invalid for a corpus containing MNIST samples");
      }
    }
  }
  const auto norm = config.normalization ? *config.normalization : default_normalization(corpus);
  const auto train = make_split(corpus, data::Split::Train, config.label_regime, norm);
  const auto val = make_split(corpus, data::Split::Val, config.label_regime, norm);
  const auto test = make_split(corpus, data::Split::Test, config.label_regime, norm);
  if (train.samples.empty()) throw std::invalid_argument("corpus has an empty training split");
  if (config.training.regime == nn::TrainRegime::TestPerformance && val.samples.empty()) {
    throw std::invalid_argument("corpus has an empty validation split");
  }
  if (test.samples.empty()) throw std::invalid_argument("corpus has an empty test split");
  std::vector<Distribution> test_orig;
  std::vector<annotation::ImageLabelSet> test_labels;
  for (const auto* cs : test.samples) {
    if (!cs->labels) throw std::invalid_argument("test sample " + cs->sample.id + " has no human labels");
    test_orig.push_back(cs->sample.original_target);
    test_labels.push_back(*cs->labels);
  }

  const fs::path dir = config.output_dir;
  fs::create_directories(dir);
  write_text_file(dir / "config.json", config.to_json());

  const std::size_t n_seeds = config.seeds.size();
  std::vector<SeedOutcome> outcomes(n_seeds);
  std::mutex say_mutex;
  const auto run_seed = [&](std::size_t idx) {
    const std::int64_t seed = config.seeds[idx];
    SeedOutcome& out = outcomes[idx];
    try {
      nn::TrainConfig tc = config.training;
      tc.seed = seed;
      const auto initial = nn::Model::build(config.arch, static_cast<std::uint64_t>(seed));
      auto fit = nn::fit(initial, train.set, val.set, tc);
      const fs::path seed_dir = dir / ("seed-" + std::to_string(seed));
      fs::create_directories(seed_dir);
      fit.dynamics.write_jsonl(seed_dir / "dynamics_train.jsonl");
      write_text_file(seed_dir / "history.csv", nn::history_csv(fit.history));
      fit.model.save(seed_dir / "model.bin");
      out.report.seed = seed;
      const auto probs = eval::to_distributions(fit.model.predict_proba(test.set.inputs));
      for (auto target : config.eval_sets) {
        const auto metrics = eval::evaluate_predictions(probs, test_orig, test_labels, target, kStrata);
        eval::append_metrics(out.report, metrics, config.dataset, to_string(config.label_regime),
                             nn::to_string(config.arch.kind));
      }
      out.dynamics = std::move(fit.dynamics);
      out.ok = true;
      std::lock_guard lock(say_mutex);
      say("seed " + std::to_string(seed) + ": " + std::to_string(fit.history.size()) + " epochs");
    } catch (const std::exception& e) {
      out.ok = false;
      out.error = e.what();
      std::lock_guard lock(say_mutex);
      say("seed " + std::to_string(seed) + " failed: " + e.what());
    }
  };

  const std::size_t workers = std::min(config.workers, n_seeds);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n_seeds; ++i) run_seed(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n_seeds; i = next++) run_seed(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  RunResult result;
  result.directory = dir;
  std::vector<eval::SeedReport> reports;
  std::vector<std::int64_t> ok_seeds;
  nn::DynamicsLog pooled;
  std::size_t window_last = 0;
  for (std::size_t i = 0; i < n_seeds; ++i) {
    auto& o = outcomes[i];
    if (!o.ok) {
      result.failures.push_back({config.seeds[i], o.error});
      continue;
    }
    reports.push_back(std::move(o.report));
    ok_seeds.push_back(config.seeds[i]);
    const std::size_t epochs = o.dynamics.epoch_count();
    window_last = window_last == 0 ? epochs : std::min(window_last, epochs);
  }

  std::vector<std::string> files;
  const auto emit = [&](const fs::path& p, std::string_view text) {
    write_text_file(p, text);
    files.push_back(rel(p, dir));
  };

  if (!reports.empty()) {
    result.report = eval::aggregate_seeds(reports);
    emit(dir / "report.csv", result.report.to_csv());
    emit(dir / "report.json", result.report.to_json());

    std::map<std::string, std::size_t> target_class;
    std::map<std::string, annotation::ImageLabelSet> train_labels;
    std::map<std::string, const data::CuratedSample*> by_id;
    for (std::size_t i = 0; i < train.samples.size(); ++i) {
      const auto* cs = train.samples[i];
      Distribution t{};
      for (std::size_t k = 0; k < kNumClasses; ++k) t[k] = train.set.targets(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
      target_class[cs->sample.id] = argmax(t);
      if (cs->labels) train_labels[cs->sample.id] = *cs->labels;
      by_id[cs->sample.id] = cs;
    }
    for (auto& o : outcomes) {
      if (!o.ok || !config.training.record_dynamics) continue;
      pooled.frames.insert(pooled.frames.end(), std::make_move_iterator(o.dynamics.frames.begin()),
                           std::make_move_iterator(o.dynamics.frames.end()));
      o.dynamics.frames.clear();
    }

    if (window_last > 0) {
      const auto window = cartography::last_epochs(window_last, std::min(kMapEpochs, window_last));
      result.data_map = cartography::data_map(pooled, ok_seeds, window, target_class);
      CsvWriter map_csv({"sample_id", "confidence", "variability", "correctness", "region", "hlv", "u_prop", "u_mean"});
      for (const auto& p : result.data_map) {
        const auto* cs = by_id.at(p.sample_id);
        map_csv.field(p.sample_id).field(p.confidence).field(p.variability).field(p.correctness);
        map_csv.field(data::to_string(cs->region));
        if (cs->labels) {
          map_csv.field(cs->labels->hlv ? "true" : "false").field(cs->labels->u_prop).field(cs->labels->u_mean);
        } else {
          map_csv.field("").field("").field("");
        }
        map_csv.end_row();
      }
      emit(dir / "data_map.csv", map_csv.str());

      CsvWriter jsd_csv({"seed", "stratum", "epoch", "jsd"});
      std::map<std::int64_t, nn::DynamicsLog> per_seed;
      for (const auto& f : pooled.frames) per_seed[f.seed].frames.push_back(f);
      for (std::int64_t seed : ok_seeds) {
        const auto& log = per_seed[seed];
        if (log.epoch_count() < 2) continue;
        for (auto stratum : kStrata) {
          std::set<std::string> subset;
          if (stratum != cartography::Stratum::All) {
            for (const auto& [id, l] : train_labels) {
              if (l.hlv == (stratum == cartography::Stratum::Hlv)) subset.insert(id);
            }
            if (subset.empty()) continue;
          }
          const auto series = cartography::jsd_series(log, subset);
          for (std::size_t e = 0; e < series.size(); ++e) {
            jsd_csv.field(static_cast<long long>(seed)).field(cartography::to_string(stratum)).field(e + 2).field(series[e]);
            jsd_csv.end_row();
          }
        }
      }
      emit(dir / "jsd_series.csv", jsd_csv.str());

      if (!train_labels.empty()) {
        result.alignment = cartography::alignment_report(result.data_map, train_labels, kStrata);
      } else {
        result.alignment.notes.push_back("training split has no human labels");
      }
      emit(dir / "alignment.csv", result.alignment.to_csv());
    }
  }

  for (const auto& s : ok_seeds) {
    const std::string seed_dir = "seed-" + std::to_string(s);
    for (const char* name : {"dynamics_train.jsonl", "history.csv", "model.bin"}) files.push_back(seed_dir + "/" + name);
  }
  files.push_back("config.json");
  std::sort(files.begin(), files.end());

  nlohmann::ordered_json manifest;
  manifest["name"] = config.name;
  manifest["config_hash"] = config.hash();
  manifest["label_regime"] = to_string(config.label_regime);
  manifest["arch"] = nn::to_string(config.arch.kind);
  manifest["seeds"] = ok_seeds;
  auto& fails = manifest["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : result.failures) fails.push_back({{"seed", f.seed}, {"error", f.error}});
  auto& notes = manifest["notes"] = nlohmann::ordered_json::array();
  for (const auto& n : result.alignment.notes) notes.push_back(n);
  auto& sums = manifest["files"] = nlohmann::ordered_json::object();
  for (const auto& f : files) sums[f] = sha256_file(dir / f);
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
  result.files = files;

  if (reports.empty()) {
    throw std::runtime_error("every seed failed; first error: " + result.failures.front().error);
  }
  return result;
}

}  // namespace hlv::experiment
