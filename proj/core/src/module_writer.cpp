#include "odpx/module_writer.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <vector>

#include "odpx/hash.hpp"
#include "odpx/ntriples_writer.hpp"
#include "odpx/version.hpp"
#include "odpx/vocab.hpp"

namespace odpx {

namespace {

struct Prefix {
  std::string_view name;
  std::string_view ns;
};

constexpr Prefix kPrefixes[] = {
    {"dcterms", vocab::kDcterms}, {"odpx", vocab::kOdpx}, {"owl", vocab::kOwl},
    {"rdfs", vocab::kRdfs},       {"skos", vocab::kSkos},
};

bool simple_local(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string name(std::string_view iri) {
  for (const auto& p : kPrefixes) {
    if (iri.starts_with(p.ns) && simple_local(iri.substr(p.ns.size()))) {
      return std::string(p.name) + ":" + std::string(iri.substr(p.ns.size()));
    }
  }
  return "<" + std::string(iri) + ">";
}

std::string object(const Term& t) {
  return t.is_iri() ? name(t.value()) : format_term(t);
}

std::string literal(std::string_view s) { return format_term(Term::literal(std::string(s))); }

/// subject -> predicate -> objects
using Blocks = std::map<std::string, std::map<std::string, std::vector<std::string>>>;

constexpr std::string_view kTypeKey = "a";

void add(Blocks& blocks, const Iri& subject, const std::string& predicate, std::string obj) {
  blocks[subject.str()][predicate].push_back(std::move(obj));
}

std::string render_block(const std::string& subject,
                         const std::map<std::string, std::vector<std::string>>& preds) {
  std::vector<std::pair<std::string, std::vector<std::string>>> ordered(preds.begin(), preds.end());
  std::stable_partition(ordered.begin(), ordered.end(),
                        [](const auto& p) { return p.first == kTypeKey; });
  std::string out = name(subject) + "\n";
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    auto objs = ordered[i].second;
    std::sort(objs.begin(), objs.end());
    objs.erase(std::unique(objs.begin(), objs.end()), objs.end());
    out += "    " + ordered[i].first + " ";
    for (std::size_t j = 0; j < objs.size(); ++j) out += (j ? ", " : "") + objs[j];
    out += i + 1 == ordered.size() ? " .\n" : " ;\n";
  }
  return out;
}

std::string body(const OntologyModule& m) {
  Blocks blocks;
  const std::string type(kTypeKey);
  for (const Iri& c : m.classes) add(blocks, c, type, name(vocab::kOwlClass));
  for (const Iri& p : m.object_properties) add(blocks, p, type, name(vocab::kOwlObjectProperty));
  for (const Iri& p : m.annotation_properties) {
    add(blocks, p, type, name(vocab::kOwlAnnotationProperty));
  }
  for (const Triple& t : m.extra_triples) {
    add(blocks, t.subject.as_iri(), name(t.predicate.str()), object(t.object));
  }
  const std::string sub_class = name(vocab::kRdfsSubClassOf);
  for (const AxiomView& a : m.axioms) {
    if (const auto* x = std::get_if<SubClassOf>(&a)) {
      add(blocks, x->sub, sub_class, name(x->sup.str()));
    } else if (const auto* x = std::get_if<SubClassOfExistential>(&a)) {
      add(blocks, x->sub, sub_class,
          "[ a owl:Restriction ; owl:onProperty " + name(x->property.str()) +
              " ; owl:someValuesFrom " + name(x->filler.str()) + " ]");
    } else if (const auto* x = std::get_if<SubPropertyOf>(&a)) {
      add(blocks, x->sub, name(vocab::kRdfsSubPropertyOf), name(x->sup.str()));
    } else if (const auto* x = std::get_if<Domain>(&a)) {
      add(blocks, x->property, name(vocab::kRdfsDomain), name(x->cls.str()));
    } else if (const auto* x = std::get_if<Range>(&a)) {
      add(blocks, x->property, name(vocab::kRdfsRange), name(x->cls.str()));
    }
  }
  std::string out;
  for (const auto& [s, preds] : blocks) out += "\n" + render_block(s, preds);
  return out;
}

std::string sanitize(std::string_view s) {
  std::string out;
  for (const char c : s) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    out.push_back(ok ? c : '_');
  }
  return out.empty() ? "module" : out;
}

std::string module_iri_for(const OntologyModule& m, const std::string& content) {
  std::string key = content;
  key += '\x1f';
  key += to_string(m.request.method);
  key += '\x1f';
  key += to_string(m.request.intermediates);
  for (const Iri& s : m.request.seeds) key += "\x1f" + s.str();
  return "urn:odpx:module:" + sanitize(m.source_name) + ":" + sha256_hex(key).substr(0, 16);
}

}  // namespace

std::string module_iri(const OntologyModule& module) {
  return module_iri_for(module, body(module));
}

std::string emit_module(const OntologyModule& module) {
  const std::string content = body(module);
  std::string out;
  for (const auto& p : kPrefixes) {
    out += "@prefix " + std::string(p.name) + ": <" + std::string(p.ns) + "> .\n";
  }
  out += "\n<" + module_iri_for(module, content) + ">\n    a owl:Ontology ;\n";
  if (module.source_iri) {
    out += "    dcterms:source <" + module.source_iri->str() + "> ;\n";
  } else if (!module.source_name.empty()) {
    out += "    dcterms:source " + literal(module.source_name) + " ;\n";
  }
  out += "    odpx:intermediates " + literal(to_string(module.request.intermediates)) + " ;\n";
  out += "    odpx:method " + literal(to_string(module.request.method)) + " ;\n";
  if (!module.request.seeds.empty()) {
    out += "    odpx:seed ";
    bool first = true;
    for (const Iri& s : module.request.seeds) {
      out += (first ? "<" : ", <") + s.str() + ">";
      first = false;
    }
    out += " ;\n";
  }
  out += "    odpx:toolVersion " + literal(kVersion) + " .\n";
  out += content;
  return out;
}

}  // namespace odpx
