#include "odpx/extract.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "odpx/error.hpp"

namespace odpx {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

/// IRIs whose membership in Σ makes `axiom` non-local for the BOT pass.
std::vector<Iri> bot_triggers(const AxiomView& axiom) {
  return std::visit(Overloaded{
                        [](const SubClassOf& a) { return std::vector<Iri>{a.sub}; },
                        [](const SubClassOfExistential& a) { return std::vector<Iri>{a.sub}; },
                        [](const SubPropertyOf& a) { return std::vector<Iri>{a.sub}; },
                        [](const Domain& a) { return std::vector<Iri>{a.property}; },
                        [](const Range& a) { return std::vector<Iri>{a.property}; },
                        [](const AnnotationAssertion&) { return std::vector<Iri>{}; },
                    },
                    axiom);
}

std::vector<Iri> top_triggers(const AxiomView& axiom) {
  return std::visit(Overloaded{
                        [](const SubClassOf& a) { return std::vector<Iri>{a.sup}; },
                        [](const SubClassOfExistential& a) {
                          return std::vector<Iri>{a.property, a.filler};
                        },
                        [](const SubPropertyOf& a) { return std::vector<Iri>{a.sup}; },
                        [](const Domain& a) { return std::vector<Iri>{a.cls}; },
                        [](const Range& a) { return std::vector<Iri>{a.cls}; },
                        [](const AnnotationAssertion&) { return std::vector<Iri>{}; },
                    },
                    axiom);
}

using Triggers = std::vector<Iri> (*)(const AxiomView&);

std::set<AxiomView> closure(const std::set<AxiomView>& axioms, const std::set<Iri>& seeds,
                            Triggers triggers) {
  std::map<Iri, std::vector<const AxiomView*>> index;
  for (const AxiomView& a : axioms) {
    for (const Iri& t : triggers(a)) index[t].push_back(&a);
  }
  std::set<Iri> sigma;
  std::vector<Iri> work;
  auto enter = [&](const Iri& iri) {
    if (sigma.insert(iri).second) work.push_back(iri);
  };
  for (const Iri& s : seeds) enter(s);

  std::set<AxiomView> out;
  while (!work.empty()) {
    const Iri next = std::move(work.back());
    work.pop_back();
    const auto it = index.find(next);
    if (it == index.end()) continue;
    for (const AxiomView* a : it->second) {
      if (!out.insert(*a).second) continue;
      for (const Iri& i : axiom_iris(*a)) enter(i);
    }
  }
  return out;
}

std::set<Iri> known_seeds(const OntologyGraph& graph, const std::set<Iri>& seeds,
                          std::vector<Iri>& unknown) {
  if (seeds.empty()) throw ExtractionError("extraction: no seeds given");
  const std::set<Iri> sig = signature(graph);
  std::set<Iri> known;
  for (const Iri& s : seeds) {
    if (sig.contains(s)) {
      known.insert(s);
    } else {
      unknown.push_back(s);
    }
  }
  if (known.empty()) {
    throw ExtractionError("extraction: none of the " + std::to_string(seeds.size()) +
                          " seeds occur in the ontology (first: " + seeds.begin()->str() + ")");
  }
  return known;
}

using Extractor = std::set<AxiomView> (*)(const std::set<AxiomView>&, const std::set<Iri>&);

OntologyModule run(const OntologyGraph& graph, const std::set<Iri>& seeds, ExtractionMethod method,
                   Extractor extractor) {
  OntologyModule module;
  module.request.seeds = seeds;
  module.request.method = method;
  module.request.intermediates = Intermediates::all;
  const std::set<Iri> known = known_seeds(graph, seeds, module.unknown_seeds);
  module.axioms = extractor(logical_axioms(graph), known);
  module.signature = axioms_signature(module.axioms);
  module.signature.insert(known.begin(), known.end());
  return module;
}

enum class Hierarchy { classes, properties };

/// sub -> sups of SubClassOf (or SubPropertyOf) axioms.
std::map<Iri, std::set<Iri>> hierarchy_edges(const std::set<AxiomView>& axioms, Hierarchy kind) {
  std::map<Iri, std::set<Iri>> edges;
  for (const AxiomView& a : axioms) {
    if (kind == Hierarchy::classes) {
      if (const auto* s = std::get_if<SubClassOf>(&a)) edges[s->sub].insert(s->sup);
    } else {
      if (const auto* s = std::get_if<SubPropertyOf>(&a)) edges[s->sub].insert(s->sup);
    }
  }
  return edges;
}

}  // namespace

std::optional<ExtractionMethod> extraction_method_from_name(std::string_view name) {
  if (name == "star") return ExtractionMethod::star;
  if (name == "bot") return ExtractionMethod::bot;
  if (name == "top") return ExtractionMethod::top;
  if (name == "subset") return ExtractionMethod::subset;
  return std::nullopt;
}

std::string_view to_string(ExtractionMethod method) {
  switch (method) {
    case ExtractionMethod::star: return "star";
    case ExtractionMethod::bot: return "bot";
    case ExtractionMethod::top: return "top";
    case ExtractionMethod::subset: return "subset";
  }
  return "star";
}

std::optional<Intermediates> intermediates_from_name(std::string_view name) {
  if (name == "all") return Intermediates::all;
  if (name == "minimal") return Intermediates::minimal;
  if (name == "none") return Intermediates::none;
  return std::nullopt;
}

std::string_view to_string(Intermediates mode) {
  switch (mode) {
    case Intermediates::all: return "all";
    case Intermediates::minimal: return "minimal";
    case Intermediates::none: return "none";
  }
  return "none";
}

std::set<Iri> axioms_signature(const std::set<AxiomView>& axioms) {
  std::set<Iri> out;
  for (const AxiomView& a : axioms) {
    for (Iri& i : axiom_iris(a)) out.insert(std::move(i));
  }
  return out;
}

std::set<AxiomView> logical_axioms(const OntologyGraph& graph) {
  std::set<AxiomView> out;
  for (AxiomView& a : axiom_views(graph).axioms) {
    if (is_logical(a)) out.insert(std::move(a));
  }
  return out;
}

std::set<AxiomView> bot_axioms(const std::set<AxiomView>& axioms, const std::set<Iri>& seeds) {
  return closure(axioms, seeds, &bot_triggers);
}

std::set<AxiomView> top_axioms(const std::set<AxiomView>& axioms, const std::set<Iri>& seeds) {
  return closure(axioms, seeds, &top_triggers);
}

std::set<AxiomView> star_axioms(const std::set<AxiomView>& axioms, const std::set<Iri>& seeds) {
  std::set<AxiomView> current = axioms;
  while (true) {
    std::set<AxiomView> next = top_axioms(bot_axioms(current, seeds), seeds);
    if (next == current) return current;
    current = std::move(next);
  }
}

std::set<AxiomView> subset_axioms(const std::set<AxiomView>& axioms, const std::set<Iri>& seeds) {
  const auto edges = hierarchy_edges(axioms, Hierarchy::classes);
  std::map<Iri, std::vector<const SubClassOfExistential*>> existentials;
  for (const AxiomView& a : axioms) {
    if (const auto* e = std::get_if<SubClassOfExistential>(&a)) existentials[e->sub].push_back(e);
  }
  auto up = [&](const Iri& start) {
    std::set<Iri> seen{start};
    std::vector<Iri> work{start};
    while (!work.empty()) {
      const Iri x = work.back();
      work.pop_back();
      const auto it = edges.find(x);
      if (it == edges.end()) continue;
      for (const Iri& s : it->second) {
        if (seen.insert(s).second) work.push_back(s);
      }
    }
    return seen;
  };
  std::map<Iri, std::set<Iri>> ups;
  for (const Iri& s : seeds) ups.emplace(s, up(s));
  auto below = [&](const Iri& a, const Iri& b) { return ups.at(a).contains(b); };

  std::set<AxiomView> out;
  for (const Iri& a : seeds) {
    for (const Iri& ancestor : ups.at(a)) {
      const auto it = existentials.find(ancestor);
      if (it == existentials.end()) continue;
      for (const auto* e : it->second) {
        if (seeds.contains(e->filler)) out.insert(SubClassOfExistential{a, e->property, e->filler});
      }
    }
    for (const Iri& b : seeds) {
      if (a == b || !below(a, b)) continue;
      const bool mediated = std::any_of(seeds.begin(), seeds.end(), [&](const Iri& c) {
        return c != a && c != b && below(a, c) && below(c, b) && !below(c, a) && !below(b, c);
      });
      if (!mediated) out.insert(SubClassOf{a, b});
    }
  }
  return out;
}

std::set<AxiomView> prune_intermediates(const std::set<AxiomView>& axioms,
                                        const std::set<Iri>& seeds, Intermediates mode) {
  if (mode == Intermediates::all) return axioms;

  std::set<Iri> in_classes;
  std::set<Iri> in_properties;
  std::set<Iri> elsewhere;
  for (const AxiomView& a : axioms) {
    if (const auto* s = std::get_if<SubClassOf>(&a)) {
      in_classes.insert(s->sub);
      in_classes.insert(s->sup);
    } else if (const auto* p = std::get_if<SubPropertyOf>(&a)) {
      in_properties.insert(p->sub);
      in_properties.insert(p->sup);
    } else {
      for (Iri& i : axiom_iris(a)) elsewhere.insert(std::move(i));
    }
  }

  std::set<AxiomView> out;
  for (const AxiomView& a : axioms) {
    if (!std::holds_alternative<SubClassOf>(a) && !std::holds_alternative<SubPropertyOf>(a)) {
      out.insert(a);
    }
  }

  for (const Hierarchy kind : {Hierarchy::classes, Hierarchy::properties}) {
    const auto edges = hierarchy_edges(axioms, kind);
    const std::set<Iri>& members = kind == Hierarchy::classes ? in_classes : in_properties;
    const std::set<Iri>& rivals = kind == Hierarchy::classes ? in_properties : in_classes;
    std::map<Iri, std::size_t> children;
    for (const auto& [sub, sups] : edges) {
      for (const Iri& s : sups) {
        if (s != sub) ++children[s];
      }
    }
    std::set<Iri> removed;
    for (const Iri& m : members) {
      if (seeds.contains(m) || elsewhere.contains(m) || rivals.contains(m)) continue;
      if (mode == Intermediates::minimal && children[m] >= 2) continue;
      removed.insert(m);
    }
    for (const Iri& x : members) {
      if (removed.contains(x)) continue;
      const auto start = edges.find(x);
      if (start == edges.end()) continue;
      std::set<Iri> seen;
      std::vector<Iri> work(start->second.begin(), start->second.end());
      while (!work.empty()) {
        const Iri y = work.back();
        work.pop_back();
        if (!seen.insert(y).second) continue;
        if (!removed.contains(y)) {
          if (y == x) continue;
          if (kind == Hierarchy::classes) {
            out.insert(SubClassOf{x, y});
          } else {
            out.insert(SubPropertyOf{x, y});
          }
          continue;
        }
        const auto it = edges.find(y);
        if (it != edges.end()) work.insert(work.end(), it->second.begin(), it->second.end());
      }
    }
  }
  return out;
}

OntologyModule extract_bot(const OntologyGraph& graph, const std::set<Iri>& seeds) {
  return run(graph, seeds, ExtractionMethod::bot, &bot_axioms);
}

OntologyModule extract_top(const OntologyGraph& graph, const std::set<Iri>& seeds) {
  return run(graph, seeds, ExtractionMethod::top, &top_axioms);
}

OntologyModule extract_star(const OntologyGraph& graph, const std::set<Iri>& seeds) {
  return run(graph, seeds, ExtractionMethod::star, &star_axioms);
}

OntologyModule extract_subset(const OntologyGraph& graph, const std::set<Iri>& seeds) {
  return run(graph, seeds, ExtractionMethod::subset, &subset_axioms);
}

OntologyModule apply_intermediates(OntologyModule module, const OntologyGraph& graph,
                                   const std::set<Iri>& seeds, Intermediates mode) {
  const std::set<Iri> sig = signature(graph);
  std::set<Iri> known;
  for (const Iri& s : seeds) {
    if (sig.contains(s)) known.insert(s);
  }
  module.axioms = prune_intermediates(module.axioms, known, mode);
  module.signature = axioms_signature(module.axioms);
  module.signature.insert(known.begin(), known.end());
  module.request.intermediates = mode;
  return module;
}

OntologyModule extract_module(const OntologyGraph& graph, const ModuleRequest& request,
                              std::string source_name) {
  OntologyModule module;
  switch (request.method) {
    case ExtractionMethod::star: module = extract_star(graph, request.seeds); break;
    case ExtractionMethod::bot: module = extract_bot(graph, request.seeds); break;
    case ExtractionMethod::top: module = extract_top(graph, request.seeds); break;
    case ExtractionMethod::subset: module = extract_subset(graph, request.seeds); break;
  }
  module = apply_intermediates(std::move(module), graph, request.seeds, request.intermediates);
  module.request = request;
  module.source_name = std::move(source_name);
  if (graph.ontology_iris().size() == 1) module.source_iri = *graph.ontology_iris().begin();

  for (const Iri& i : module.signature) {
    if (graph.declared_classes().contains(i)) module.classes.insert(i);
    if (graph.declared_object_properties().contains(i)) module.object_properties.insert(i);
  }
  if (request.include_annotations) {
    for (const AxiomView& a : axiom_views(graph).axioms) {
      const auto* ann = std::get_if<AnnotationAssertion>(&a);
      if (ann == nullptr || !module.signature.contains(ann->subject)) continue;
      if (module.source_iri && ann->subject == *module.source_iri) continue;
      module.extra_triples.insert(Triple{Term::iri(ann->subject), ann->property, ann->value});
      if (graph.declared_annotation_properties().contains(ann->property)) {
        module.annotation_properties.insert(ann->property);
      }
    }
  }
  return module;
}

}  // namespace odpx
