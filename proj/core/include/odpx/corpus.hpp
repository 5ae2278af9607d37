#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "odpx/graph.hpp"
#include "odpx/iri.hpp"

namespace odpx {

/// One IRI together with the natural-language text harvested for it.
struct ConceptDocument {
  Iri iri;
  std::vector<std::string> label_texts;
  std::vector<std::string> definition_texts;
  std::vector<std::string> comment_texts;
  /// Labels, then definitions, then comments, single-space joined.
  std::string combined_text;

  bool operator==(const ConceptDocument&) const = default;
};

struct CorpusConfig {
  /// Harvest order. Label-like properties feed label_texts, definition-like
  /// ones definition_texts, anything else comment_texts.
  std::vector<Iri> annotation_properties = default_annotation_properties();
  /// Preferred language; nullopt keeps every value regardless of tag.
  std::optional<std::string> language_filter = std::string("en");
  /// Synthesize "Sequential Activity" from .../SequentialActivity for subjects without text.
  bool include_local_name_fallback = false;

  static std::vector<Iri> default_annotation_properties();
  /// Throws ConfigError when annotation_properties is empty.
  void validate() const;
};

/// Documents sorted by IRI, one per eligible IRI with non-empty text.
/// Ontology header IRIs (typed owl:Ontology) are not eligible.
std::vector<ConceptDocument> build_corpus(const OntologyGraph& graph, const CorpusConfig& config);

/// Trims and collapses every run of whitespace to one space.
std::string collapse_whitespace(std::string_view text);

/// Splits a local name on CamelCase boundaries, '_' and '-'.
std::string split_local_name(std::string_view local_name);

/// "IRI<TAB>combined_text" per line, sorted by IRI.
std::string write_corpus_tsv(std::span<const ConceptDocument> corpus);

/// Inverse of write_corpus_tsv; only iri and combined_text are recovered.
/// Throws FormatError on malformed lines.
std::vector<ConceptDocument> read_corpus_tsv(std::string_view text);

}  // namespace odpx
