#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "odpx/embedding.hpp"

namespace {

std::vector<std::string> texts(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back("heat treatment step " + std::to_string(i) +
                  " changes the microstructure of the alloy at a controlled temperature");
  }
  return out;
}

void BM_LocalHashEmbed(benchmark::State& state) {
  odpx::LocalHashProvider provider(static_cast<std::size_t>(state.range(0)));
  const auto batch = texts(256);
  for (auto _ : state) benchmark::DoNotOptimize(provider.embed(batch));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * batch.size()));
}
BENCHMARK(BM_LocalHashEmbed)->Arg(128)->Arg(512)->Arg(2048);

void BM_Features(benchmark::State& state) {
  const auto batch = texts(256);
  for (auto _ : state) {
    for (const auto& t : batch) benchmark::DoNotOptimize(odpx::local_hash_features(t));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * batch.size()));
}
BENCHMARK(BM_Features);

}  // namespace
