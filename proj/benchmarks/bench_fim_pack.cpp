#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "repocorpus/fim.hpp"
#include "repocorpus/packing.hpp"
#include "repocorpus/tokenizer.hpp"

using namespace repocorpus;

namespace {

std::vector<std::string> documents(std::size_t n, std::size_t len) {
  std::mt19937_64 rng(4);
  std::vector<std::string> docs;
  for (std::size_t i = 0; i < n; ++i) {
    std::string d(len, ' ');
    for (auto& c : d) c = static_cast<char>(rng() % 8 == 0 ? '\n' : 'a' + rng() % 26);
    docs.push_back(std::move(d));
  }
  return docs;
}

void BM_FimTransform(benchmark::State& state) {
  const auto docs = documents(64, static_cast<std::size_t>(state.range(0)));
  const SentinelSet s;
  const FimConfig cfg{0.5, FimMode::psm, 1};
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fim_transform(docs[i % docs.size()], cfg, s, i));
    ++i;
  }
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FimTransform)->Arg(1000)->Arg(100000);

void BM_ByteTokenize(benchmark::State& state) {
  const ByteTokenizer tok;
  const auto docs = documents(1, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tok.encode(docs[0]));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ByteTokenize)->Arg(100000);

void BM_PackEntries(benchmark::State& state) {
  const ByteTokenizer tok;
  const auto docs = documents(static_cast<std::size_t>(state.range(0)), 3000);
  for (auto _ : state) benchmark::DoNotOptimize(pack_entries(docs, tok, 4096));
  state.SetBytesProcessed(state.iterations() * state.range(0) * 3000);
}
BENCHMARK(BM_PackEntries)->Arg(100)->Arg(1000);

} // namespace
