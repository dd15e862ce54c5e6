#include <benchmark/benchmark.h>

#include <string>

#include "newsgauge/diffusion.hpp"
#include "newsgauge/learn.hpp"
#include "newsgauge/random.hpp"
#include "newsgauge/textkit.hpp"

namespace {

using namespace newsgauge;

// Layered posting -> article -> paper graph with random fan-out.
diffusion::DiffusionGraph layered(std::size_t articles) {
  diffusion::DiffusionGraph g;
  Rng rng(7);
  const std::size_t papers = articles / 2 + 1;
  for (std::size_t p = 0; p < papers; ++p) g.add_node("p" + std::to_string(p), diffusion::NodeKind::Paper);
  for (std::size_t a = 0; a < articles; ++a) {
    const auto id = "a" + std::to_string(a);
    g.add_node(id, diffusion::NodeKind::Article);
    for (int k = 0; k < 2; ++k) {
      const auto target = "p" + std::to_string(rng.index(papers));
      if (!g.successors(id).contains(target)) g.add_edge(id, target);
    }
    for (std::size_t t = 0; t < 3; ++t) {
      const auto post = "t" + std::to_string(a) + "_" + std::to_string(t);
      g.add_node(post, diffusion::NodeKind::Posting);
      g.add_edge(post, id);
    }
  }
  return g;
}

void BM_PageRank(benchmark::State& state) {
  const auto g = layered(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(diffusion::personalized_pagerank(g));
}
BENCHMARK(BM_PageRank)->Arg(100)->Arg(1000);

void BM_Betweenness(benchmark::State& state) {
  const auto g = layered(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(diffusion::betweenness(g));
}
BENCHMARK(BM_Betweenness)->Arg(100)->Arg(400);

void BM_Analyze(benchmark::State& state) {
  std::string text;
  for (int i = 0; i < 50; ++i) {
    text += "Researchers at the University of Oslo said on 3 March 2021 that 42% of samples showed \"clear signs\". ";
  }
  for (auto _ : state) benchmark::DoNotOptimize(textkit::analyze(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Analyze);

void BM_ForestTrain(benchmark::State& state) {
  Rng rng(3);
  learn::Matrix X;
  std::vector<int> y;
  for (int i = 0; i < 500; ++i) {
    std::vector<double> row(20);
    for (auto& v : row) v = rng.uniform();
    y.push_back(row[0] + row[1] > 1.0 ? 1 : 0);
    X.push_back(std::move(row));
  }
  for (auto _ : state) benchmark::DoNotOptimize(learn::Forest::train(X, y, {50, 1, std::nullopt}));
}
BENCHMARK(BM_ForestTrain);

}  // namespace

// The distro ships benchmark_main only as LTO bytecode from another compiler.
BENCHMARK_MAIN();
