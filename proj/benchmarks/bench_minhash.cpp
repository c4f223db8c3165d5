#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "repocorpus/dedup.hpp"

using namespace repocorpus;

namespace {

std::string random_code(std::size_t tokens, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  static const char* vocab[] = {"def", "return", "self", "(", ")", ":", "=", "if", "else", "for", "in",
                                "import", "class", "x", "y", "value", "items", "+", "-", "[", "]"};
  std::string s;
  for (std::size_t i = 0; i < tokens; ++i) {
    s += vocab[rng() % std::size(vocab)];
    s += (rng() % 8 == 0) ? "\n" : " ";
  }
  return s;
}

void BM_Shingles(benchmark::State& state) {
  const auto text = random_code(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(shingles(text, 5));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_Shingles)->Arg(1000)->Arg(20000);

void BM_MinHashSign(benchmark::State& state) {
  const MinHasher hasher(MinHashParams{128, 5, 1});
  const auto text = random_code(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(hasher.sign_text(text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_MinHashSign)->Arg(1000)->Arg(20000);

void BM_FindNearDuplicates(benchmark::State& state) {
  const MinHasher hasher(MinHashParams{128, 5, 1});
  std::vector<MinHashSignature> sigs;
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    RepoSample s;
    s.repo_id = "repo" + std::to_string(i);
    s.text = random_code(2000, static_cast<std::uint64_t>(i % (state.range(0) / 2 + 1)));
    s.char_count = s.text.size();
    sigs.push_back(hasher.sign(s));
  }
  for (auto _ : state) benchmark::DoNotOptimize(find_near_duplicates(sigs, 0.85));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FindNearDuplicates)->Arg(200)->Arg(2000);

} // namespace
