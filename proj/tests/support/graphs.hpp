#pragma once

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "odpx/graph.hpp"

namespace odpx::testing {

/// Brute-force RDF graph isomorphism: ground triples must match exactly and
/// some bijection of blank nodes must map one blank-triple set onto the other.
inline bool isomorphic(const OntologyGraph& a, const OntologyGraph& b) {
  if (a.size() != b.size()) return false;
  auto has_blank = [](const Triple& t) { return t.subject.is_blank() || t.object.is_blank(); };
  std::vector<Triple> ga, gb, ba;
  std::set<Triple> bb;
  for (const Triple& t : a.triples()) (has_blank(t) ? ba.push_back(t) : ga.push_back(t));
  for (const Triple& t : b.triples()) {
    if (has_blank(t)) {
      bb.insert(t);
    } else {
      gb.push_back(t);
    }
  }
  if (ga != gb || ba.size() != bb.size()) return false;

  auto blanks = [](const auto& triples) {
    std::map<std::string, std::size_t> degree;
    for (const Triple& t : triples) {
      if (t.subject.is_blank()) ++degree[t.subject.value()];
      if (t.object.is_blank()) ++degree[t.object.value()];
    }
    return degree;
  };
  const auto da = blanks(ba);
  const auto db = blanks(bb);
  if (da.size() != db.size()) return false;
  std::vector<std::string> order;
  for (const auto& [k, _] : da) order.push_back(k);
  std::map<std::string, std::string> map;
  std::set<std::string> used;

  auto image = [&](const Term& t, bool& complete) {
    if (!t.is_blank()) return t;
    const auto it = map.find(t.value());
    if (it == map.end()) {
      complete = false;
      return t;
    }
    return Term::blank(it->second);
  };
  auto consistent = [&] {
    for (const Triple& t : ba) {
      bool complete = true;
      Triple m{image(t.subject, complete), t.predicate, image(t.object, complete)};
      if (complete && !bb.count(m)) return false;
    }
    return true;
  };
  std::function<bool(std::size_t)> search = [&](std::size_t i) {
    if (i == order.size()) return true;
    for (const auto& [cand, deg] : db) {
      if (used.count(cand) || deg != da.at(order[i])) continue;
      map[order[i]] = cand;
      used.insert(cand);
      if (consistent() && search(i + 1)) return true;
      map.erase(order[i]);
      used.erase(cand);
    }
    return false;
  };
  return search(0);
}

/// Non-canonical N-Triples writer: shuffled lines, arbitrary blank labels,
/// every non-ASCII or special character written as a \u or \U escape.
inline std::string scrambled_ntriples(const OntologyGraph& g, std::mt19937_64& rng) {
  std::map<std::string, std::string> relabel;
  auto label = [&](const std::string& l) {
    auto it = relabel.find(l);
    if (it == relabel.end()) it = relabel.emplace(l, "x" + std::to_string(rng() % 100000) + "_" + std::to_string(relabel.size())).first;
    return it->second;
  };
  auto escape = [](const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size();) {
      const auto c = static_cast<unsigned char>(s[i]);
      std::uint32_t cp = c;
      std::size_t len = 1;
      if (c >= 0xF0) { cp = c & 0x07; len = 4; }
      else if (c >= 0xE0) { cp = c & 0x0F; len = 3; }
      else if (c >= 0xC0) { cp = c & 0x1F; len = 2; }
      for (std::size_t k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
      i += len;
      char buf[16];
      if (cp >= 0x20 && cp < 0x7F && cp != '"' && cp != '\\') {
        out.push_back(static_cast<char>(cp));
      } else if (cp <= 0xFFFF) {
        std::snprintf(buf, sizeof buf, "\\u%04X", cp);
        out += buf;
      } else {
        std::snprintf(buf, sizeof buf, "\\U%08X", cp);
        out += buf;
      }
    }
    return out;
  };
  auto term = [&](const Term& t) -> std::string {
    if (t.is_iri()) return "<" + t.value() + ">";
    if (t.is_blank()) return "_:" + label(t.value());
    std::string out = "\"" + escape(t.value()) + "\"";
    if (!t.language().empty()) out += "@" + t.language();
    else if (!t.datatype().empty()) out += "^^<" + t.datatype() + ">";
    return out;
  };
  std::vector<std::string> lines;
  for (const Triple& t : g.triples()) {
    lines.push_back(term(t.subject) + "\t<" + t.predicate.str() + ">  " + term(t.object) + " .");
  }
  std::shuffle(lines.begin(), lines.end(), rng);
  std::string out = "# scrambled\n";
  for (const auto& l : lines) out += l + (rng() % 2 ? "\n" : " # note\r\n");
  return out;
}

/// Random graph mixing IRIs (some non-ASCII), blank nodes and literals with
/// awkward characters, language tags and datatypes.
inline OntologyGraph random_graph(std::mt19937_64& rng) {
  auto pick = [&rng](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  static const std::vector<std::string> iris = {
      "http://example.org/a", "http://example.org/b#c", "urn:x:1", "http://example.org/\xC3\xA9t\xC3\xA9",
      "http://example.org/path/with.dots", "https://example.org/q?x=1", "http://example.org/\xF0\x9F\x8C\x8D"};
  static const std::vector<std::string> texts = {
      "plain", "with \"quotes\"", "back\\slash", "line\nbreak", "tab\there", "cr\rhere", "caf\xC3\xA9",
      "", "bell\x07", "\xE2\x80\x93 dash", "emoji \xF0\x9F\x98\x80", "form\ffeed", "x\x7F"};
  static const std::vector<std::string> langs = {"en", "de", "en-gb", "fr"};
  static const std::vector<std::string> datatypes = {"http://www.w3.org/2001/XMLSchema#integer",
                                                     "http://example.org/dt"};
  GraphBuilder b;
  const std::size_t blanks = pick(7);
  const std::size_t n = 1 + pick(40);
  auto node = [&]() {
    if (blanks > 0 && pick(3) == 0) return Term::blank("g" + std::to_string(pick(blanks)));
    return Term::iri(Iri::unchecked(iris[pick(iris.size())]));
  };
  for (std::size_t i = 0; i < n; ++i) {
    Term s = node();
    Iri p = Iri::unchecked(iris[pick(iris.size())]);
    Term o = node();
    const std::size_t k = pick(4);
    if (k == 0) o = Term::literal(texts[pick(texts.size())]);
    if (k == 1) o = Term::literal(texts[pick(texts.size())], {}, langs[pick(langs.size())]);
    if (k == 2) o = Term::literal(std::to_string(pick(1000)), datatypes[pick(datatypes.size())]);
    b.add(std::move(s), std::move(p), std::move(o));
  }
  return std::move(b).build();
}

}  // namespace odpx::testing
