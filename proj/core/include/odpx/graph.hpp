#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "odpx/iri.hpp"
#include "odpx/term.hpp"

namespace odpx {

/// Immutable, deduplicated triple set with subject/predicate/object indexes.
/// Safe for concurrent reads once built.
class OntologyGraph {
 public:
  OntologyGraph() = default;

  std::span<const Triple> triples() const noexcept { return triples_; }
  std::size_t size() const noexcept { return triples_.size(); }
  bool empty() const noexcept { return triples_.empty(); }

  std::vector<const Triple*> with_subject(const Term& subject) const;
  std::vector<const Triple*> with_predicate(const Iri& predicate) const;
  std::vector<const Triple*> with_object(const Term& object) const;

  /// Objects of every (subject, predicate, *) triple, in triple order.
  std::vector<Term> objects(const Term& subject, std::string_view predicate) const;
  bool contains(const Triple& triple) const;

  const std::set<Iri>& declared_classes() const noexcept { return classes_; }
  const std::set<Iri>& declared_object_properties() const noexcept { return object_properties_; }
  const std::set<Iri>& declared_annotation_properties() const noexcept {
    return annotation_properties_;
  }
  /// Subjects typed owl:Ontology.
  const std::set<Iri>& ontology_iris() const noexcept { return ontology_iris_; }

 private:
  friend class GraphBuilder;
  using Postings = std::vector<std::uint32_t>;

  std::vector<const Triple*> resolve(const Postings* postings) const;

  std::vector<Triple> triples_;
  std::map<Term, Postings> by_subject_;
  std::map<Iri, Postings> by_predicate_;
  std::map<Term, Postings> by_object_;
  std::set<Iri> classes_;
  std::set<Iri> object_properties_;
  std::set<Iri> annotation_properties_;
  std::set<Iri> ontology_iris_;
};

/// Accumulates triples from one or more documents, then freezes them.
class GraphBuilder {
 public:
  /// Throws Error when the subject is a literal.
  void add(Term subject, Iri predicate, Term object);
  void add(Triple triple) { add(std::move(triple.subject), std::move(triple.predicate), std::move(triple.object)); }

  /// A blank label never handed out before by this builder.
  std::string fresh_blank_label();

  std::size_t pending() const noexcept { return triples_.size(); }

  OntologyGraph build() &&;

 private:
  std::vector<Triple> triples_;
  std::uint64_t next_blank_ = 0;
};

/// Every IRI in subject, predicate or object position outside the
/// RDF/RDFS/OWL namespaces.
std::set<Iri> signature(const OntologyGraph& graph);

}  // namespace odpx
