#pragma once

#include <compare>
#include <string>
#include <variant>
#include <vector>

#include "odpx/graph.hpp"
#include "odpx/iri.hpp"
#include "odpx/term.hpp"

namespace odpx {

struct SubClassOf {
  Iri sub;
  Iri sup;
  auto operator<=>(const SubClassOf&) const = default;
};

/// sub ⊑ ∃property.filler, stored as a blank-node owl:Restriction.
struct SubClassOfExistential {
  Iri sub;
  Iri property;
  Iri filler;
  auto operator<=>(const SubClassOfExistential&) const = default;
};

struct SubPropertyOf {
  Iri sub;
  Iri sup;
  auto operator<=>(const SubPropertyOf&) const = default;
};

struct Domain {
  Iri property;
  Iri cls;
  auto operator<=>(const Domain&) const = default;
};

struct Range {
  Iri property;
  Iri cls;
  auto operator<=>(const Range&) const = default;
};

struct AnnotationAssertion {
  Iri subject;
  Iri property;
  Term value;
  auto operator<=>(const AnnotationAssertion&) const = default;
};

/// Ordering is by alternative index, then lexicographic on fields.
using AxiomView = std::variant<SubClassOf, SubClassOfExistential, SubPropertyOf, Domain, Range,
                               AnnotationAssertion>;

struct AxiomViewResult {
  std::vector<AxiomView> axioms;
  std::vector<std::string> warnings;
};

/// All recognised axioms, sorted and deduplicated. Axioms mentioning an
/// RDF/RDFS/OWL vocabulary IRI as an entity (e.g. A ⊑ owl:Thing) are skipped,
/// as are nested restrictions; malformed restriction nodes produce warnings.
AxiomViewResult axiom_views(const OntologyGraph& graph);

/// Every axiom kind except AnnotationAssertion.
bool is_logical(const AxiomView& axiom) noexcept;

/// Entity IRIs the axiom mentions, in field order (annotation property included).
std::vector<Iri> axiom_iris(const AxiomView& axiom);

/// Functional-syntax-like spelling, e.g. "SubClassOf(<a> <b>)".
std::string to_string(const AxiomView& axiom);

/// Triples that encode `axiom`; existentials use `blank_label` for the restriction node.
std::vector<Triple> axiom_triples(const AxiomView& axiom, const std::string& blank_label);

}  // namespace odpx
