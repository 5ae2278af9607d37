#include <doctest.h>

#include <random>
#include <sstream>

#include "odpx/axioms.hpp"
#include "odpx/pipeline.hpp"
#include "odpx/rdf_parser.hpp"
#include "support/random_ontology.hpp"

using namespace odpx;

namespace {

std::string data(const std::string& name) { return std::string(ODPX_DATA_DIR) + "/fixtures/" + name; }

std::set<std::string> lines_of(const std::string& path) {
  std::set<std::string> out;
  std::istringstream in(read_file(path));
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') out.insert(line);
  }
  return out;
}

OntologyGraph toy() { return load_ontology({data("toy.ttl")}); }

}  // namespace

TEST_CASE("toy logical axioms match the hand enumeration") {
  std::set<std::string> got;
  std::size_t annotations = 0;
  for (const auto& a : axiom_views(toy()).axioms) {
    if (is_logical(a)) {
      got.insert(to_string(a));
    } else {
      ++annotations;
    }
  }
  CHECK(got == lines_of(data("toy_axioms.txt")));
  CHECK(annotations == 17);
  CHECK(axiom_views(toy()).warnings.empty());
}

TEST_CASE("toy signature matches the hand enumeration") {
  std::set<std::string> got;
  for (const Iri& i : signature(toy())) got.insert(i.str());
  CHECK(got == lines_of(data("toy_signature.txt")));
}

TEST_CASE("malformed restrictions are reported, not recovered") {
  const auto r = axiom_views(load_ontology({data("malformed_restrictions.ttl")}));
  REQUIRE(r.axioms.size() == 1);
  const auto* e = std::get_if<SubClassOfExistential>(&r.axioms.front());
  REQUIRE(e != nullptr);
  CHECK(e->sub.str() == "http://example.org/bad#H");
  CHECK(r.warnings.size() == 4);
  std::string all;
  for (const auto& w : r.warnings) all += w + "\n";
  CHECK(all.find("without onProperty") != std::string::npos);
  CHECK(all.find("multiple onProperty") != std::string::npos);
  CHECK(all.find("missing rdf:type") != std::string::npos);
  CHECK(all.find("nested restriction") != std::string::npos);
}

TEST_CASE("axioms survive the triple encoding") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    const auto o = testing::random_ontology(rng);
    const auto views = axiom_views(o.graph);
    const std::set<AxiomView> back(views.axioms.begin(), views.axioms.end());
    CHECK(back == o.axioms);
  }
}

TEST_CASE("annotation assertions need a literal and a non-reserved or annotation predicate") {
  const auto g = parse_document(R"(
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
<http://e/A> rdfs:label "a" ; <http://e/note> "n" ; owl:versionInfo "1" ; <http://e/link> <http://e/B> .
)", Syntax::turtle);
  std::set<std::string> props;
  for (const auto& a : axiom_views(g).axioms) {
    if (const auto* x = std::get_if<AnnotationAssertion>(&a)) props.insert(x->property.str());
  }
  CHECK(props == std::set<std::string>{"http://e/note", "http://www.w3.org/2000/01/rdf-schema#label"});
}

TEST_CASE("axiom ordering is by kind then fields") {
  const Iri a = Iri::parse("http://e/a");
  const Iri b = Iri::parse("http://e/b");
  CHECK(AxiomView{SubClassOf{b, a}} < AxiomView{SubClassOfExistential{a, a, a}});
  CHECK(AxiomView{SubClassOf{a, b}} < AxiomView{SubClassOf{b, a}});
  CHECK(AxiomView{Domain{b, b}} < AxiomView{Range{a, a}});
}
