#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "odpx/ntriples_writer.hpp"
#include "odpx/pipeline.hpp"
#include "odpx/rdf_parser.hpp"

namespace {

/// Turtle with `n` classes, each labelled and hanging under a restriction.
std::string synthetic_turtle(std::size_t n) {
  std::string out =
      "@prefix : <http://example.org/b#> .\n@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
      "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n";
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = ":C" + std::to_string(i);
    out += c + " a owl:Class ; rdfs:label \"class number " + std::to_string(i) + "\"@en ;\n";
    out += "  rdfs:subClassOf :C" + std::to_string(i / 2) + " , [ a owl:Restriction ; owl:onProperty :p ; "
           "owl:someValuesFrom :C" + std::to_string((i * 7) % n) + " ] .\n";
  }
  return out;
}

void BM_ParseTurtle(benchmark::State& state) {
  const auto text = synthetic_turtle(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(odpx::parse_document(text, odpx::Syntax::turtle));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseTurtle)->Arg(100)->Arg(1000)->Arg(10000);

void BM_ParseNTriples(benchmark::State& state) {
  const auto nt = odpx::serialize_ntriples(
      odpx::parse_document(synthetic_turtle(static_cast<std::size_t>(state.range(0))), odpx::Syntax::turtle));
  for (auto _ : state) benchmark::DoNotOptimize(odpx::parse_document(nt, odpx::Syntax::ntriples));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * nt.size()));
}
BENCHMARK(BM_ParseNTriples)->Arg(1000)->Arg(10000);

void BM_CanonicalSerialize(benchmark::State& state) {
  const auto g =
      odpx::parse_document(synthetic_turtle(static_cast<std::size_t>(state.range(0))), odpx::Syntax::turtle);
  for (auto _ : state) benchmark::DoNotOptimize(odpx::serialize_ntriples(g));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * g.size()));
}
BENCHMARK(BM_CanonicalSerialize)->Arg(100)->Arg(1000)->Arg(10000);

}  // namespace
