#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "odpx/axioms.hpp"
#include "odpx/error.hpp"
#include "odpx/graph.hpp"
#include "odpx/iri.hpp"

namespace odpx {

enum class ExtractionMethod { star, bot, top, subset };
enum class Intermediates { all, minimal, none };

std::optional<ExtractionMethod> extraction_method_from_name(std::string_view name);
std::string_view to_string(ExtractionMethod method);
std::optional<Intermediates> intermediates_from_name(std::string_view name);
std::string_view to_string(Intermediates mode);

struct ModuleRequest {
  std::set<Iri> seeds;
  ExtractionMethod method = ExtractionMethod::star;
  Intermediates intermediates = Intermediates::none;
  bool include_annotations = true;

  bool operator==(const ModuleRequest&) const = default;
};

struct OntologyModule {
  /// Logical axioms only.
  std::set<AxiomView> axioms;
  /// Annotation triples about signature IRIs.
  std::set<Triple> extra_triples;
  std::set<Iri> signature;
  /// Signature members the source declares as classes / object properties.
  std::set<Iri> classes;
  std::set<Iri> object_properties;
  /// Annotation properties used by extra_triples and declared in the source.
  std::set<Iri> annotation_properties;

  ModuleRequest request;
  /// Short name of the source ontology, e.g. "toy".
  std::string source_name;
  /// The source's owl:Ontology IRI when it has exactly one.
  std::optional<Iri> source_iri;
  /// Requested seeds absent from the source signature.
  std::vector<Iri> unknown_seeds;
};

/// Raised when none of the requested seeds occur in the source.
class ExtractionError : public Error {
 public:
  using Error::Error;
};

/// Upward closure: starting from Σ = seeds, add every axiom whose subject
/// side (sub class, sub property, domain/range property) is in Σ, then its IRIs.
std::set<AxiomView> bot_axioms(const std::set<AxiomView>& axioms, const std::set<Iri>& seeds);

/// Downward closure: add SubClassOf/SubPropertyOf with sup in Σ,
/// existentials whose property or filler is in Σ, and domain/range axioms
/// whose class is in Σ.
std::set<AxiomView> top_axioms(const std::set<AxiomView>& axioms, const std::set<Iri>& seeds);

/// Alternates bot_axioms and top_axioms, both from the original seeds,
/// until the axiom set stops shrinking.
std::set<AxiomView> star_axioms(const std::set<AxiomView>& axioms, const std::set<Iri>& seeds);

/// Subclass pairs between seeds (no seed strictly in between) plus
/// existential edges inherited along the subclass closure, both ends seeds.
std::set<AxiomView> subset_axioms(const std::set<AxiomView>& axioms, const std::set<Iri>& seeds);

/// Removes non-seed classes (and properties) that occur only in hierarchy
/// axioms, reconnecting each retained sub to the nearest retained super.
/// `minimal` keeps intermediates with two or more direct children.
std::set<AxiomView> prune_intermediates(const std::set<AxiomView>& axioms,
                                        const std::set<Iri>& seeds, Intermediates mode);

/// IRIs mentioned by any axiom in the set.
std::set<Iri> axioms_signature(const std::set<AxiomView>& axioms);

/// Logical axioms of the graph as a set.
std::set<AxiomView> logical_axioms(const OntologyGraph& graph);

OntologyModule extract_bot(const OntologyGraph& graph, const std::set<Iri>& seeds);
OntologyModule extract_top(const OntologyGraph& graph, const std::set<Iri>& seeds);
OntologyModule extract_star(const OntologyGraph& graph, const std::set<Iri>& seeds);
OntologyModule extract_subset(const OntologyGraph& graph, const std::set<Iri>& seeds);
OntologyModule apply_intermediates(OntologyModule module, const OntologyGraph& graph,
                                   const std::set<Iri>& seeds, Intermediates mode);

/// Full request: extraction, intermediates handling, then declarations and
/// (optionally) annotations for the final signature. Unknown seeds are
/// recorded; throws ExtractionError when no seed is known or seeds are empty.
OntologyModule extract_module(const OntologyGraph& graph, const ModuleRequest& request,
                              std::string source_name = {});

}  // namespace odpx
