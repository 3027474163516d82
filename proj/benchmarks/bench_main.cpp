#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "hlv/annotation/aggregate.hpp"
#include "hlv/cartography/divergence.hpp"
#include "hlv/cartography/spearman.hpp"
#include "hlv/common/rng.hpp"
#include "hlv/nn/model.hpp"

using namespace hlv;

namespace {

nn::Matrix random_batch(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  nn::Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-1.0, 1.0);
  return m;
}

nn::Matrix uniform_targets(std::size_t rows) {
  return nn::Matrix::Constant(static_cast<Eigen::Index>(rows), kNumClasses, 1.0 / kNumClasses);
}

Distribution random_distribution(Rng& rng) {
  Distribution d{};
  double total = 0.0;
  for (auto& v : d) total += v = rng.uniform();
  for (auto& v : d) v /= total;
  return d;
}

void forward(benchmark::State& state, nn::ArchKind kind) {
  const auto model = nn::Model::build({kind}, 1);
  const auto x = random_batch(64, kNumPixels, 2);
  for (auto _ : state) benchmark::DoNotOptimize(model.forward(x));
  state.SetItemsProcessed(state.iterations() * 64);
}

void train_step(benchmark::State& state, nn::ArchKind kind) {
  const auto model = nn::Model::build({kind}, 1);
  const auto x = random_batch(64, kNumPixels, 2);
  const auto t = uniform_targets(64);
  std::vector<double> grad(model.param_count());
  for (auto _ : state) benchmark::DoNotOptimize(model.loss_and_gradient(x, t, grad));
  state.SetItemsProcessed(state.iterations() * 64);
}

void aggregate_images(benchmark::State& state) {
  Rng rng(3);
  std::vector<annotation::AnnotationRecord> records;
  for (int img = 0; img < 1000; ++img) {
    for (int a = 0; a < 6; ++a) {
      annotation::AnnotationRecord r;
      r.image_id = "i" + std::to_string(img);
      r.annotator_id = "a" + std::to_string(a);
      for (auto& j : r.judgments) {
        const double u = rng.uniform();
        j = u < 0.15 ? annotation::Judgment::Yes : u < 0.3 ? annotation::Judgment::Unsure : annotation::Judgment::No;
      }
      records.push_back(r);
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(annotation::aggregate_all(records));
  state.SetItemsProcessed(state.iterations() * 1000);
}

void jsd_pairs(benchmark::State& state) {
  Rng rng(4);
  std::vector<Distribution> p(1024), q(1024);
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = random_distribution(rng);
    q[i] = random_distribution(rng);
  }
  for (auto _ : state) {
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) total += cartography::jsd(p[i], q[i]);
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}

void spearman_n(benchmark::State& state) {
  Rng rng(5);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = rng.uniform();
    y[i] = x[i] + rng.uniform();
  }
  for (auto _ : state) benchmark::DoNotOptimize(cartography::spearman(x, y));
}

}  // namespace

BENCHMARK_CAPTURE(forward, simple_ffn, nn::ArchKind::SimpleFFN);
BENCHMARK_CAPTURE(forward, deeper_ffn, nn::ArchKind::DeeperFFN);
BENCHMARK_CAPTURE(forward, lenet, nn::ArchKind::LeNet);
BENCHMARK_CAPTURE(train_step, simple_ffn, nn::ArchKind::SimpleFFN);
BENCHMARK_CAPTURE(train_step, lenet, nn::ArchKind::LeNet);
BENCHMARK(aggregate_images);
BENCHMARK(jsd_pairs);
BENCHMARK(spearman_n)->Arg(100)->Arg(2000)->Arg(50000);
BENCHMARK_MAIN();
