#include "odpx/ntriples_writer.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <string_view>
#include <vector>

#include "odpx/hash.hpp"

namespace odpx {

namespace {

void append_escaped(std::string& out, std::string_view text) {
  for (const char c : text) {
    const auto u = static_cast<unsigned char>(c);
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if ((u < 0x20 && c != '\t') || u == 0x7f) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", u);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string render(const Triple& t, const std::map<std::string, std::string>& blank_names) {
  auto term = [&](const Term& x) {
    if (!x.is_blank()) return format_term(x);
    return "_:" + blank_names.at(x.value());
  };
  return term(t.subject) + " <" + t.predicate.str() + "> " + term(t.object) + " .";
}

/// Label-independent colour for each blank node, by iterated refinement of
/// neighbourhood hashes.
std::map<std::string, std::string> colour_blank_nodes(const OntologyGraph& graph) {
  std::map<std::string, std::vector<const Triple*>> incident;
  for (const Triple& t : graph.triples()) {
    if (t.subject.is_blank()) incident[t.subject.value()].push_back(&t);
    if (t.object.is_blank() && !(t.subject.is_blank() && t.subject.value() == t.object.value())) {
      incident[t.object.value()].push_back(&t);
    }
  }
  std::map<std::string, std::string> colour;
  for (const auto& [label, _] : incident) colour[label] = "";

  auto describe = [&](const std::string& self, const Term& other) {
    if (!other.is_blank()) return format_term(other);
    if (other.value() == self) return std::string("@self");
    return "_:" + colour.at(other.value());
  };

  std::size_t distinct = 0;
  for (std::size_t round = 0; round <= incident.size() + 1; ++round) {
    std::map<std::string, std::string> next;
    for (const auto& [label, triples] : incident) {
      std::vector<std::string> parts;
      parts.reserve(triples.size());
      for (const Triple* t : triples) {
        if (t->subject.is_blank() && t->subject.value() == label) {
          parts.push_back("S " + t->predicate.str() + " " + describe(label, t->object));
        } else {
          parts.push_back("O " + describe(label, t->subject) + " " + t->predicate.str());
        }
      }
      std::sort(parts.begin(), parts.end());
      std::string joined = colour.at(label);
      for (const auto& p : parts) {
        joined += '\x1f';
        joined += p;
      }
      next[label] = hex64(fnv1a64(joined));
    }
    std::set<std::string> values;
    for (const auto& [_, c] : next) values.insert(c);
    colour = std::move(next);
    if (values.size() == distinct) break;
    distinct = values.size();
  }
  return colour;
}

}  // namespace

std::string format_term(const Term& term) {
  switch (term.kind()) {
    case TermKind::iri:
      return "<" + term.value() + ">";
    case TermKind::blank:
      return "_:" + term.value();
    case TermKind::literal: {
      std::string out = "\"";
      append_escaped(out, term.value());
      out += '"';
      if (!term.language().empty()) {
        out += "@" + term.language();
      } else if (!term.datatype().empty()) {
        out += "^^<" + term.datatype() + ">";
      }
      return out;
    }
  }
  return {};
}

std::string serialize_ntriples(const OntologyGraph& graph) {
  const auto colours = colour_blank_nodes(graph);

  std::map<std::string, std::string> identity;
  for (const auto& [label, _] : colours) identity[label] = label;

  struct Keyed {
    std::string key;
    std::string original;
    const Triple* triple;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(graph.size());
  for (const Triple& t : graph.triples()) {
    keyed.push_back({render(t, colours), render(t, identity), &t});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return a.key != b.key ? a.key < b.key : a.original < b.original;
  });

  std::map<std::string, std::string> names;
  auto assign = [&names](const Term& term) {
    if (term.is_blank() && !names.contains(term.value())) {
      names.emplace(term.value(), "b" + std::to_string(names.size()));
    }
  };
  for (const auto& k : keyed) {
    assign(k.triple->subject);
    assign(k.triple->object);
  }

  std::vector<std::string> lines;
  lines.reserve(keyed.size());
  for (const auto& k : keyed) lines.push_back(render(*k.triple, names));
  std::sort(lines.begin(), lines.end());

  std::string out;
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace odpx
