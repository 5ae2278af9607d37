#include <benchmark/benchmark.h>

#include <random>

#include "odpx/matcher.hpp"

namespace {

void BM_Retrieve(benchmark::State& state) {
  const std::size_t cols = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<odpx::Iri> iris;
  std::vector<double> scores;
  for (std::size_t j = 0; j < cols; ++j) iris.push_back(odpx::Iri::unchecked("http://x.org/c" + std::to_string(j)));
  for (std::size_t n = 0; n < 3 * cols; ++n) scores.push_back(u(rng));
  const odpx::SimilarityMatrix m({"req1", "req2", "req3"}, iris, scores);
  const odpx::MatcherConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(odpx::retrieve(m, config));
}
BENCHMARK(BM_Retrieve)->Arg(100)->Arg(1000)->Arg(10000);

void BM_Cosine(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  std::vector<float> a(dim), b(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    a[i] = static_cast<float>(i % 7) - 3.0f;
    b[i] = static_cast<float>(i % 5) - 2.0f;
  }
  const odpx::EmbeddingVector va(a), vb(b);
  for (auto _ : state) benchmark::DoNotOptimize(odpx::cosine(va, vb));
}
BENCHMARK(BM_Cosine)->Arg(512)->Arg(768);

}  // namespace
