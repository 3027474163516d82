#include "hlv/experiment/corpus_builder.hpp"

#include <map>
#include <stdexcept>

#include "hlv/common/rng.hpp"
#include "hlv/nn/trainer.hpp"

namespace hlv::experiment {

namespace {

nn::TrainingSet probe_set(std::span<const data::ImageSample> samples, data::Normalization norm) {
  nn::TrainingSet set;
  set.inputs = data::normalize(samples, norm);
  set.targets = nn::Matrix::Zero(static_cast<Eigen::Index>(samples.size()), static_cast<Eigen::Index>(kNumClasses));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    set.ids.push_back(samples[i].id);
    for (std::size_t k = 0; k < kNumClasses; ++k) {
      set.targets(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = samples[i].original_target[k];
    }
  }
  return set;
}

std::vector<data::StratifiedItem> strata_items(const std::vector<data::CuratedSample>& samples) {
  std::vector<data::StratifiedItem> items;
  for (const auto& cs : samples) items.push_back({cs.sample.id, data::original_digit(cs.sample), cs.region});
  return items;
}

}  // namespace

CorpusBuildResult build_corpus(std::span<const data::ImageSample> samples, const CorpusBuildConfig& config,
                               std::span<const data::ImageSample> audit_against) {
  config.thresholds.validate();
  config.ratios.validate();
  for (const auto& s : samples) data::validate(s);

  CorpusBuildResult result;
  auto dedup = data::deduplicate(samples, audit_against);
  result.dedup = std::move(dedup.report);
  const auto& unique = dedup.unique;
  if (unique.empty()) throw std::invalid_argument("build_corpus: no samples");

  nn::TrainConfig probe;
  probe.regime = nn::TrainRegime::Dynamics;
  probe.fixed_epochs = config.thresholds.horizon_epochs;
  probe.batch_size = config.probe_batch_size;
  probe.learning_rate = config.probe_learning_rate;
  probe.seed = static_cast<std::int64_t>(config.seed);
  const auto train = probe_set(unique, config.normalization);
  const nn::TrainingSet empty{{}, nn::Matrix(0, static_cast<Eigen::Index>(kNumPixels)),
                              nn::Matrix(0, static_cast<Eigen::Index>(kNumClasses))};
  const auto initial = nn::Model::build({nn::ArchKind::SimpleFFN}, derive_seed({config.seed, 0x9b0e}));
  const auto fit = nn::fit(initial, train, empty, probe);
  result.regions = data::assign_regions(fit.dynamics, config.thresholds);

  std::map<std::string, data::Region> region_of;
  for (const auto& r : result.regions) region_of[r.sample_id] = r.region;

  std::vector<data::CuratedSample> kept;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    const auto region = region_of.at(unique[i].id);
    if (region == data::Region::Unfiltered) continue;
    kept.push_back({unique[i], i, region, std::nullopt});
  }

  if (config.target_size && *config.target_size < kept.size()) {
    const double keep = static_cast<double>(*config.target_size) / static_cast<double>(kept.size());
    const auto items = strata_items(kept);
    const auto choice = data::stratified_split(items, {keep, 1.0 - keep, 0.0}, 0, derive_seed({config.seed, 0x5ab5}));
    std::vector<data::CuratedSample> sub;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      if (choice[i] == data::Split::Train) sub.push_back(std::move(kept[i]));
    }
    kept = std::move(sub);
  }

  const auto items = strata_items(kept);
  const auto splits = data::stratified_split(items, config.ratios, config.min_easy_per_class,
                                             derive_seed({config.seed, 0x5b17}));
  for (std::size_t i = 0; i < kept.size(); ++i) kept[i].sample.split = splits[i];

  result.corpus.name = config.name;
  result.corpus.samples = std::move(kept);
  return result;
}

}  // namespace hlv::experiment
