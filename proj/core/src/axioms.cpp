#include "odpx/axioms.hpp"

#include <algorithm>
#include <set>

#include "odpx/ntriples_writer.hpp"
#include "odpx/vocab.hpp"

namespace odpx {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool entity(const Term& t) { return t.is_iri() && !vocab::is_reserved(t.value()); }

/// Predicates that take a restriction's "kind" slot besides someValuesFrom.
bool is_restriction_kind(std::string_view p) {
  static const std::set<std::string_view> kinds = {
      "http://www.w3.org/2002/07/owl#allValuesFrom",
      "http://www.w3.org/2002/07/owl#hasValue",
      "http://www.w3.org/2002/07/owl#hasSelf",
      "http://www.w3.org/2002/07/owl#cardinality",
      "http://www.w3.org/2002/07/owl#minCardinality",
      "http://www.w3.org/2002/07/owl#maxCardinality",
      "http://www.w3.org/2002/07/owl#qualifiedCardinality",
      "http://www.w3.org/2002/07/owl#minQualifiedCardinality",
      "http://www.w3.org/2002/07/owl#maxQualifiedCardinality",
  };
  return kinds.contains(p);
}

bool is_annotation_predicate(const OntologyGraph& graph, const Iri& p) {
  const std::string& s = p.str();
  if (!vocab::is_reserved(s)) return true;
  return s == vocab::kRdfsLabel || s == vocab::kRdfsComment || s == vocab::kRdfsSeeAlso ||
         s == vocab::kRdfsIsDefinedBy || graph.declared_annotation_properties().contains(p);
}

struct RestrictionShape {
  std::vector<Term> on_property;
  std::vector<Term> some_values_from;
  bool typed = false;
  bool other_kind = false;
};

RestrictionShape inspect(const OntologyGraph& graph, const Term& node) {
  RestrictionShape shape;
  for (const Triple* t : graph.with_subject(node)) {
    const std::string& p = t->predicate.str();
    if (p == vocab::kOwlOnProperty) {
      shape.on_property.push_back(t->object);
    } else if (p == vocab::kOwlSomeValuesFrom) {
      shape.some_values_from.push_back(t->object);
    } else if (p == vocab::kRdfType && t->object.value() == vocab::kOwlRestriction) {
      shape.typed = true;
    } else if (is_restriction_kind(p)) {
      shape.other_kind = true;
    }
  }
  return shape;
}

}  // namespace

bool is_logical(const AxiomView& axiom) noexcept {
  return !std::holds_alternative<AnnotationAssertion>(axiom);
}

std::vector<Iri> axiom_iris(const AxiomView& axiom) {
  return std::visit(Overloaded{
                        [](const SubClassOf& a) { return std::vector<Iri>{a.sub, a.sup}; },
                        [](const SubClassOfExistential& a) {
                          return std::vector<Iri>{a.sub, a.property, a.filler};
                        },
                        [](const SubPropertyOf& a) { return std::vector<Iri>{a.sub, a.sup}; },
                        [](const Domain& a) { return std::vector<Iri>{a.property, a.cls}; },
                        [](const Range& a) { return std::vector<Iri>{a.property, a.cls}; },
                        [](const AnnotationAssertion& a) {
                          return std::vector<Iri>{a.subject, a.property};
                        },
                    },
                    axiom);
}

std::string to_string(const AxiomView& axiom) {
  auto b = [](const Iri& i) { return "<" + i.str() + ">"; };
  return std::visit(
      Overloaded{
          [&](const SubClassOf& a) { return "SubClassOf(" + b(a.sub) + " " + b(a.sup) + ")"; },
          [&](const SubClassOfExistential& a) {
            return "SubClassOf(" + b(a.sub) + " ObjectSomeValuesFrom(" + b(a.property) + " " +
                   b(a.filler) + "))";
          },
          [&](const SubPropertyOf& a) {
            return "SubObjectPropertyOf(" + b(a.sub) + " " + b(a.sup) + ")";
          },
          [&](const Domain& a) {
            return "ObjectPropertyDomain(" + b(a.property) + " " + b(a.cls) + ")";
          },
          [&](const Range& a) {
            return "ObjectPropertyRange(" + b(a.property) + " " + b(a.cls) + ")";
          },
          [&](const AnnotationAssertion& a) {
            return "AnnotationAssertion(" + b(a.property) + " " + b(a.subject) + " " +
                   format_term(a.value) + ")";
          },
      },
      axiom);
}

std::vector<Triple> axiom_triples(const AxiomView& axiom, const std::string& blank_label) {
  auto iri = [](std::string_view s) { return Iri::unchecked(std::string(s)); };
  return std::visit(
      Overloaded{
          [&](const SubClassOf& a) {
            return std::vector<Triple>{{Term::iri(a.sub), iri(vocab::kRdfsSubClassOf), Term::iri(a.sup)}};
          },
          [&](const SubClassOfExistential& a) {
            const Term node = Term::blank(blank_label);
            return std::vector<Triple>{
                {Term::iri(a.sub), iri(vocab::kRdfsSubClassOf), node},
                {node, iri(vocab::kRdfType), Term::iri(iri(vocab::kOwlRestriction))},
                {node, iri(vocab::kOwlOnProperty), Term::iri(a.property)},
                {node, iri(vocab::kOwlSomeValuesFrom), Term::iri(a.filler)},
            };
          },
          [&](const SubPropertyOf& a) {
            return std::vector<Triple>{
                {Term::iri(a.sub), iri(vocab::kRdfsSubPropertyOf), Term::iri(a.sup)}};
          },
          [&](const Domain& a) {
            return std::vector<Triple>{{Term::iri(a.property), iri(vocab::kRdfsDomain), Term::iri(a.cls)}};
          },
          [&](const Range& a) {
            return std::vector<Triple>{{Term::iri(a.property), iri(vocab::kRdfsRange), Term::iri(a.cls)}};
          },
          [&](const AnnotationAssertion& a) {
            return std::vector<Triple>{{Term::iri(a.subject), a.property, a.value}};
          },
      },
      axiom);
}

AxiomViewResult axiom_views(const OntologyGraph& graph) {
  AxiomViewResult result;
  std::set<AxiomView> axioms;

  for (const Triple& t : graph.triples()) {
    const std::string& p = t.predicate.str();
    if (p == vocab::kRdfsSubClassOf) {
      if (!entity(t.subject)) continue;
      if (entity(t.object)) {
        axioms.insert(SubClassOf{t.subject.as_iri(), t.object.as_iri()});
      } else if (t.object.is_blank()) {
        const RestrictionShape shape = inspect(graph, t.object);
        if (shape.some_values_from.empty()) continue;  // other restriction kinds: ignored
        if (!shape.typed || shape.on_property.size() != 1 || shape.some_values_from.size() != 1) {
          continue;  // reported below
        }
        const Term& prop = shape.on_property.front();
        const Term& filler = shape.some_values_from.front();
        if (entity(prop) && entity(filler)) {
          axioms.insert(SubClassOfExistential{t.subject.as_iri(), prop.as_iri(), filler.as_iri()});
        } else if (filler.is_blank()) {
          result.warnings.push_back("nested restriction under " + t.subject.value() +
                                    " not recovered");
        }
      }
    } else if (p == vocab::kRdfsSubPropertyOf) {
      if (entity(t.subject) && entity(t.object)) {
        axioms.insert(SubPropertyOf{t.subject.as_iri(), t.object.as_iri()});
      }
    } else if (p == vocab::kRdfsDomain) {
      if (entity(t.subject) && entity(t.object)) {
        axioms.insert(Domain{t.subject.as_iri(), t.object.as_iri()});
      }
    } else if (p == vocab::kRdfsRange) {
      if (entity(t.subject) && entity(t.object)) {
        axioms.insert(Range{t.subject.as_iri(), t.object.as_iri()});
      }
    } else if (t.subject.is_iri() && t.object.is_literal() && is_annotation_predicate(graph, t.predicate)) {
      axioms.insert(AnnotationAssertion{t.subject.as_iri(), t.predicate, t.object});
    }
  }

  // Malformed restriction nodes, wherever they occur.
  std::set<std::string> checked;
  for (const std::string_view key : {vocab::kOwlOnProperty, vocab::kOwlSomeValuesFrom}) {
    for (const Triple* t : graph.with_predicate(Iri::unchecked(std::string(key)))) {
      if (!t->subject.is_blank() || !checked.insert(t->subject.value()).second) continue;
      const RestrictionShape s = inspect(graph, t->subject);
      const std::string where = "restriction _:" + t->subject.value();
      if (s.on_property.empty()) {
        result.warnings.push_back(where + ": someValuesFrom without onProperty");
      } else if (s.on_property.size() > 1) {
        result.warnings.push_back(where + ": multiple onProperty values");
      } else if (s.some_values_from.empty() && !s.other_kind) {
        result.warnings.push_back(where + ": onProperty without someValuesFrom");
      } else if (s.some_values_from.size() > 1) {
        result.warnings.push_back(where + ": multiple someValuesFrom values");
      } else if (!s.typed && !s.some_values_from.empty()) {
        result.warnings.push_back(where + ": missing rdf:type owl:Restriction");
      }
    }
  }
  std::sort(result.warnings.begin(), result.warnings.end());

  result.axioms.assign(axioms.begin(), axioms.end());
  return result;
}

}  // namespace odpx
