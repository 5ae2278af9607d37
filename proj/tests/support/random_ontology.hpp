#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "odpx/axioms.hpp"
#include "odpx/graph.hpp"
#include "odpx/vocab.hpp"

namespace odpx::testing {

struct OntologyLimits {
  std::size_t max_axioms = 100;
  std::size_t max_classes = 40;
  std::size_t max_properties = 8;
};

struct RandomOntology {
  std::vector<Iri> classes;
  std::vector<Iri> properties;
  std::set<AxiomView> axioms;
  OntologyGraph graph;
};

inline Iri class_iri(std::size_t i) {
  return Iri::unchecked("http://example.org/r#C" + std::to_string(i));
}

inline Iri property_iri(std::size_t i) {
  return Iri::unchecked("http://example.org/r#p" + std::to_string(i));
}

/// Graph holding exactly `axioms` plus declarations for the given entities.
inline OntologyGraph graph_of(const std::set<AxiomView>& axioms, const std::vector<Iri>& classes,
                              const std::vector<Iri>& properties) {
  GraphBuilder b;
  const Iri type = Iri::unchecked(std::string(vocab::kRdfType));
  for (const Iri& c : classes) b.add(Term::iri(c), type, Term::iri(Iri::unchecked(std::string(vocab::kOwlClass))));
  for (const Iri& p : properties) {
    b.add(Term::iri(p), type, Term::iri(Iri::unchecked(std::string(vocab::kOwlObjectProperty))));
  }
  for (const AxiomView& a : axioms) {
    for (Triple& t : axiom_triples(a, b.fresh_blank_label())) b.add(std::move(t));
  }
  return std::move(b).build();
}

/// Random logical axioms over C0..Cn and p0..pm. Hierarchies may contain
/// cycles; self-loops are excluded.
inline RandomOntology random_ontology(std::mt19937_64& rng, const OntologyLimits& limits = {}) {
  auto pick = [&rng](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  RandomOntology o;
  const std::size_t nc = pick(2, limits.max_classes);
  const std::size_t np = pick(1, limits.max_properties);
  for (std::size_t i = 0; i < nc; ++i) o.classes.push_back(class_iri(i));
  for (std::size_t i = 0; i < np; ++i) o.properties.push_back(property_iri(i));
  const std::size_t target = pick(1, limits.max_axioms);
  auto cls = [&] { return o.classes[pick(0, nc - 1)]; };
  auto prop = [&] { return o.properties[pick(0, np - 1)]; };
  for (std::size_t attempts = 0; o.axioms.size() < target && attempts < target * 4; ++attempts) {
    const std::size_t kind = pick(0, 9);
    if (kind <= 4) {
      // Mostly downward-pointing edges so hierarchies have some depth.
      const std::size_t a = pick(0, nc - 1);
      const std::size_t b = pick(0, 7) == 0 ? pick(0, nc - 1) : pick(0, a == 0 ? 0 : a - 1);
      if (a != b) o.axioms.insert(SubClassOf{o.classes[a], o.classes[b]});
    } else if (kind <= 6) {
      o.axioms.insert(SubClassOfExistential{cls(), prop(), cls()});
    } else if (kind == 7) {
      const Iri a = prop();
      const Iri b = prop();
      if (a != b) o.axioms.insert(SubPropertyOf{a, b});
    } else if (kind == 8) {
      o.axioms.insert(Domain{prop(), cls()});
    } else {
      o.axioms.insert(Range{prop(), cls()});
    }
  }
  o.graph = graph_of(o.axioms, o.classes, o.properties);
  return o;
}

/// 1..max distinct seeds drawn from classes and properties.
inline std::set<Iri> random_seeds(std::mt19937_64& rng, const RandomOntology& o, std::size_t max) {
  std::vector<Iri> pool = o.classes;
  pool.insert(pool.end(), o.properties.begin(), o.properties.end());
  std::shuffle(pool.begin(), pool.end(), rng);
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, std::min(max, pool.size()))(rng);
  return {pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n)};
}

}  // namespace odpx::testing
