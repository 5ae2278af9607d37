#include "odpx/corpus.hpp"

#include <algorithm>
#include <map>

#include "odpx/error.hpp"
#include "odpx/vocab.hpp"

namespace odpx {

namespace {

enum class TextRole { label, definition, comment };

TextRole role_of(const Iri& property) {
  const std::string& p = property.str();
  if (p == vocab::kSkosPrefLabel || p == vocab::kRdfsLabel || p == vocab::kSkosAltLabel) {
    return TextRole::label;
  }
  if (p == vocab::kSkosDefinition || p == vocab::kIaoDefinition || p == vocab::kDctermsDescription) {
    return TextRole::definition;
  }
  return TextRole::comment;
}

bool language_matches(std::string_view tag, std::string_view wanted) {
  if (tag.size() < wanted.size()) return false;
  for (std::size_t i = 0; i < wanted.size(); ++i) {
    char a = tag[i];
    char b = wanted[i];
    if (a >= 'A' && a <= 'Z') a = static_cast<char>(a + 32);
    if (b >= 'A' && b <= 'Z') b = static_cast<char>(b + 32);
    if (a != b) return false;
  }
  return tag.size() == wanted.size() || tag[wanted.size()] == '-';
}

/// Values of one property for one subject after language selection: every
/// value tagged with the wanted language or untagged; otherwise the
/// lexicographically first remaining value. Sorted, duplicates dropped.
std::vector<std::string> select_values(const std::vector<Term>& literals,
                                       const std::optional<std::string>& language) {
  std::vector<std::string> preferred;
  std::vector<std::string> other;
  for (const Term& t : literals) {
    std::string text = collapse_whitespace(t.value());
    if (text.empty()) continue;
    if (!language || t.language().empty() || language_matches(t.language(), *language)) {
      preferred.push_back(std::move(text));
    } else {
      other.push_back(std::move(text));
    }
  }
  std::vector<std::string> chosen = std::move(preferred);
  if (chosen.empty() && !other.empty()) chosen = {*std::min_element(other.begin(), other.end())};
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  return chosen;
}

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower_or_digit(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); }

}  // namespace

std::vector<Iri> CorpusConfig::default_annotation_properties() {
  std::vector<Iri> out;
  for (const std::string_view p :
       {vocab::kSkosPrefLabel, vocab::kRdfsLabel, vocab::kSkosAltLabel, vocab::kSkosDefinition,
        vocab::kIaoDefinition, vocab::kDctermsDescription, vocab::kRdfsComment}) {
    out.push_back(Iri::unchecked(std::string(p)));
  }
  return out;
}

void CorpusConfig::validate() const {
  if (annotation_properties.empty()) throw ConfigError("corpus: annotation_properties is empty");
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (const char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string split_local_name(std::string_view name) {
  std::string out;
  for (std::size_t i = 0; i < name.size(); ++i) {
    const char c = name[i];
    if (c == '_' || c == '-') {
      out.push_back(' ');
      continue;
    }
    if (is_upper(c) && i > 0) {
      const char prev = name[i - 1];
      const bool next_lower = i + 1 < name.size() && name[i + 1] >= 'a' && name[i + 1] <= 'z';
      if (is_lower_or_digit(prev) || (is_upper(prev) && next_lower)) out.push_back(' ');
    }
    out.push_back(c);
  }
  return collapse_whitespace(out);
}

std::vector<ConceptDocument> build_corpus(const OntologyGraph& graph, const CorpusConfig& config) {
  config.validate();
  const std::set<Iri> eligible = signature(graph);
  std::vector<ConceptDocument> corpus;

  for (const Iri& iri : eligible) {
    if (graph.ontology_iris().contains(iri)) continue;
    const Term subject = Term::iri(iri);
    ConceptDocument doc{iri, {}, {}, {}, {}};
    for (const Iri& property : config.annotation_properties) {
      std::vector<Term> literals;
      for (const Term& o : graph.objects(subject, property.str())) {
        if (o.is_literal()) literals.push_back(o);
      }
      auto values = select_values(literals, config.language_filter);
      auto& bucket = role_of(property) == TextRole::label        ? doc.label_texts
                     : role_of(property) == TextRole::definition ? doc.definition_texts
                                                                 : doc.comment_texts;
      bucket.insert(bucket.end(), values.begin(), values.end());
    }
    std::string combined;
    for (const auto* group : {&doc.label_texts, &doc.definition_texts, &doc.comment_texts}) {
      for (const auto& text : *group) {
        if (!combined.empty()) combined.push_back(' ');
        combined += text;
      }
    }
    if (combined.empty() && config.include_local_name_fallback && !graph.with_subject(subject).empty()) {
      combined = split_local_name(iri.local_name());
    }
    doc.combined_text = collapse_whitespace(combined);
    if (!doc.combined_text.empty()) corpus.push_back(std::move(doc));
  }
  return corpus;
}

std::string write_corpus_tsv(std::span<const ConceptDocument> corpus) {
  std::vector<const ConceptDocument*> sorted;
  for (const auto& d : corpus) sorted.push_back(&d);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->iri < b->iri; });
  std::string out;
  for (const auto* d : sorted) {
    out += d->iri.str();
    out += '\t';
    out += collapse_whitespace(d->combined_text);
    out += '\n';
  }
  return out;
}

std::vector<ConceptDocument> read_corpus_tsv(std::string_view text) {
  std::vector<ConceptDocument> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw FormatError("corpus TSV line " + std::to_string(line_no) + ": missing tab");
    }
    auto iri = Iri::try_parse(line.substr(0, tab));
    if (!iri) throw FormatError("corpus TSV line " + std::to_string(line_no) + ": invalid IRI");
    ConceptDocument doc{*iri, {}, {}, {}, std::string(line.substr(tab + 1))};
    if (doc.combined_text.empty()) {
      throw FormatError("corpus TSV line " + std::to_string(line_no) + ": empty text");
    }
    out.push_back(std::move(doc));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.iri < b.iri; });
  return out;
}

}  // namespace odpx
