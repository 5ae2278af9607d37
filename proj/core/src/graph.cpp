#include "odpx/graph.hpp"

#include <algorithm>

#include "odpx/error.hpp"
#include "odpx/vocab.hpp"

namespace odpx {

std::vector<const Triple*> OntologyGraph::resolve(const Postings* postings) const {
  std::vector<const Triple*> out;
  if (postings == nullptr) return out;
  out.reserve(postings->size());
  for (const auto index : *postings) out.push_back(&triples_[index]);
  return out;
}

std::vector<const Triple*> OntologyGraph::with_subject(const Term& subject) const {
  const auto it = by_subject_.find(subject);
  return resolve(it == by_subject_.end() ? nullptr : &it->second);
}

std::vector<const Triple*> OntologyGraph::with_predicate(const Iri& predicate) const {
  const auto it = by_predicate_.find(predicate);
  return resolve(it == by_predicate_.end() ? nullptr : &it->second);
}

std::vector<const Triple*> OntologyGraph::with_object(const Term& object) const {
  const auto it = by_object_.find(object);
  return resolve(it == by_object_.end() ? nullptr : &it->second);
}

std::vector<Term> OntologyGraph::objects(const Term& subject, std::string_view predicate) const {
  std::vector<Term> out;
  const auto it = by_subject_.find(subject);
  if (it == by_subject_.end()) return out;
  for (const auto index : it->second) {
    const Triple& t = triples_[index];
    if (t.predicate.str() == predicate) out.push_back(t.object);
  }
  return out;
}

bool OntologyGraph::contains(const Triple& triple) const {
  return std::binary_search(triples_.begin(), triples_.end(), triple);
}

void GraphBuilder::add(Term subject, Iri predicate, Term object) {
  if (subject.is_literal()) {
    throw Error("literal in subject position: \"" + subject.value() + "\"");
  }
  triples_.push_back(Triple{std::move(subject), std::move(predicate), std::move(object)});
}

std::string GraphBuilder::fresh_blank_label() { return "n" + std::to_string(next_blank_++); }

OntologyGraph GraphBuilder::build() && {
  OntologyGraph g;
  std::sort(triples_.begin(), triples_.end());
  triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
  g.triples_ = std::move(triples_);
  triples_.clear();

  for (std::uint32_t i = 0; i < g.triples_.size(); ++i) {
    const Triple& t = g.triples_[i];
    g.by_subject_[t.subject].push_back(i);
    g.by_predicate_[t.predicate].push_back(i);
    g.by_object_[t.object].push_back(i);
    if (t.predicate.str() == vocab::kRdfType && t.subject.is_iri() && t.object.is_iri()) {
      const std::string& type = t.object.value();
      if (type == vocab::kOwlClass || type == vocab::kRdfsClass) {
        g.classes_.insert(t.subject.as_iri());
      } else if (type == vocab::kOwlObjectProperty) {
        g.object_properties_.insert(t.subject.as_iri());
      } else if (type == vocab::kOwlAnnotationProperty) {
        g.annotation_properties_.insert(t.subject.as_iri());
      } else if (type == vocab::kOwlOntology) {
        g.ontology_iris_.insert(t.subject.as_iri());
      }
    }
  }
  return g;
}

std::set<Iri> signature(const OntologyGraph& graph) {
  std::set<Iri> out;
  auto visit = [&out](const std::string& iri) {
    if (!vocab::is_reserved(iri)) out.insert(Iri::unchecked(iri));
  };
  for (const Triple& t : graph.triples()) {
    if (t.subject.is_iri()) visit(t.subject.value());
    visit(t.predicate.str());
    if (t.object.is_iri()) visit(t.object.value());
  }
  return out;
}

}  // namespace odpx
