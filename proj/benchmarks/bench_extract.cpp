#include <benchmark/benchmark.h>

#include <random>

#include "odpx/extract.hpp"
#include "support/random_ontology.hpp"

namespace {

using odpx::testing::random_ontology;
using odpx::testing::random_seeds;

struct Case {
  odpx::testing::RandomOntology ontology;
  std::set<odpx::Iri> seeds;
};

Case make_case(std::size_t axioms) {
  std::mt19937_64 rng(axioms);
  auto o = random_ontology(rng, {axioms, axioms / 3 + 2, 12});
  auto seeds = random_seeds(rng, o, 5);
  return {std::move(o), std::move(seeds)};
}

template <std::set<odpx::AxiomView> (*Fn)(const std::set<odpx::AxiomView>&, const std::set<odpx::Iri>&)>
void BM_Closure(benchmark::State& state) {
  const auto c = make_case(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(c.ontology.axioms, c.seeds));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Closure<odpx::bot_axioms>)->Name("BM_Bot")->Arg(100)->Arg(1000)->Arg(10000);
BENCHMARK(BM_Closure<odpx::top_axioms>)->Name("BM_Top")->Arg(100)->Arg(1000)->Arg(10000);
BENCHMARK(BM_Closure<odpx::star_axioms>)->Name("BM_Star")->Arg(100)->Arg(1000)->Arg(10000);
BENCHMARK(BM_Closure<odpx::subset_axioms>)->Name("BM_Subset")->Arg(100)->Arg(1000)->Arg(10000);

void BM_PruneNone(benchmark::State& state) {
  const auto c = make_case(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(odpx::prune_intermediates(c.ontology.axioms, c.seeds, odpx::Intermediates::none));
  }
}
BENCHMARK(BM_PruneNone)->Arg(100)->Arg(1000)->Arg(10000);

}  // namespace
