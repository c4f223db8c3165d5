#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "repocorpus/dependency.hpp"
#include "repocorpus/repo_sample.hpp"

using namespace repocorpus;

namespace {

// A repository-shaped graph: n files, each importing a few earlier ones,
// plus a sprinkling of back edges that form cycles.
std::pair<std::vector<std::string>, std::vector<DependencyPair>> repo_graph(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back("src/module_" + std::to_string(i) + ".py");
  std::vector<DependencyPair> edges;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t imports = rng() % 5;
    for (std::size_t k = 0; k < imports; ++k) edges.push_back({nodes[i], nodes[rng() % i]});
    if (rng() % 20 == 0) edges.push_back({nodes[rng() % i], nodes[i]});
  }
  return {nodes, edges};
}

void BM_BuildGraph(benchmark::State& state) {
  const auto [nodes, edges] = repo_graph(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(DependencyGraph::build(nodes, edges));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildGraph)->Arg(8)->Arg(64)->Arg(1024)->Arg(16384);

void BM_TopologicalSort(benchmark::State& state) {
  const auto [nodes, edges] = repo_graph(static_cast<std::size_t>(state.range(0)), 2);
  const auto g = DependencyGraph::build(nodes, edges);
  for (auto _ : state) benchmark::DoNotOptimize(topological_sort_indices(g));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TopologicalSort)->Arg(8)->Arg(64)->Arg(1024)->Arg(16384);

void BM_OrderRepository(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::vector<SourceFile> files;
  for (std::size_t i = 0; i < n; ++i) {
    std::string content;
    for (int k = 0; k < 3 && i > 0; ++k) content += "import module_" + std::to_string(rng() % i) + "\n";
    content += "def f():\n    return " + std::to_string(i) + "\n";
    files.push_back({"r", "module_" + std::to_string(i) + ".py", LanguageId::named("Python"), content});
  }
  for (auto _ : state) benchmark::DoNotOptimize(order_repository("r", files));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OrderRepository)->Arg(16)->Arg(256);

} // namespace
