#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "repocorpus/decontam.hpp"

using namespace repocorpus;

namespace {

std::string words(std::mt19937_64& rng, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    s += "w" + std::to_string(rng() % 5000);
    s += (i % 12 == 11) ? "\n" : " ";
  }
  return s;
}

ContaminationIndex make_index(std::size_t strings) {
  std::mt19937_64 rng(1);
  std::vector<TestString> ts;
  for (std::size_t i = 0; i < strings; ++i) ts.push_back({words(rng, 3 + rng() % 60), "bench"});
  return build_contamination_index(ts);
}

void BM_BuildIndex(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(make_index(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_BuildIndex)->Arg(1000)->Arg(10000);

void BM_Scan(benchmark::State& state) {
  const auto index = make_index(10000);
  std::mt19937_64 rng(2);
  const auto text = words(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(is_contaminated(text, index));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_Scan)->Arg(1000)->Arg(100000);

} // namespace
