#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "odpx/corpus.hpp"
#include "odpx/embedding.hpp"
#include "odpx/iri.hpp"
#include "odpx/requirements.hpp"

namespace odpx {

/// How per-sentence cosines combine into one requirement score. `joined`
/// embeds all sentences as a single text instead.
enum class SentenceAggregation { max, mean, joined };

std::optional<SentenceAggregation> aggregation_from_name(std::string_view name);
std::string_view to_string(SentenceAggregation aggregation);

struct MatcherConfig {
  /// Minimum score to retrieve; 0 keeps the top k with non-negative scores.
  double theta = 0.0;
  std::size_t k = 20;
  SentenceAggregation aggregation = SentenceAggregation::max;

  /// Throws ConfigError when k == 0 or theta is outside [-1, 1].
  void validate() const;
};

/// Requirement-by-concept cosine scores, row-major.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  /// Throws Error when scores.size() != rows * cols or a score is non-finite.
  SimilarityMatrix(std::vector<std::string> requirement_ids, std::vector<Iri> concept_iris,
                   std::vector<double> scores);

  std::size_t rows() const noexcept { return requirement_ids_.size(); }
  std::size_t cols() const noexcept { return concept_iris_.size(); }
  double at(std::size_t row, std::size_t col) const { return scores_[row * cols() + col]; }

  const std::vector<std::string>& requirement_ids() const noexcept { return requirement_ids_; }
  const std::vector<Iri>& concept_iris() const noexcept { return concept_iris_; }

 private:
  std::vector<std::string> requirement_ids_;
  std::vector<Iri> concept_iris_;
  std::vector<double> scores_;
};

struct ScoredIri {
  Iri iri;
  double score = 0.0;
  bool operator==(const ScoredIri&) const = default;
};

/// Concepts retrieved for one requirement, best first.
struct RetrievedSet {
  std::string requirement_id;
  std::vector<ScoredIri> ranked;
  bool operator==(const RetrievedSet&) const = default;
};

/// a·b / (|a| |b|); 0 when either vector is all-zero. Throws
/// DimensionMismatchError on unequal dimensions.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

/// Vectors for the matching inputs, keyed "concept <iri>" and
/// "requirement <id> <n>" (n-th sentence, or 0 for the joined text).
using EmbeddingTable = std::map<std::string, EmbeddingVector>;

EmbeddingTable embed_inputs(std::span<const Requirement> requirements,
                            std::span<const ConceptDocument> corpus, EmbeddingProvider& provider,
                            SentenceAggregation aggregation);

/// "key TAB dimension TAB base64(float32 LE)" per line, sorted by key.
std::string write_embedding_table(const EmbeddingTable& table);
/// Throws FormatError on a malformed line.
EmbeddingTable read_embedding_table(std::string_view text);

/// Throws FormatError when the table lacks a needed key.
SimilarityMatrix similarity_matrix(std::span<const Requirement> requirements,
                                   std::span<const ConceptDocument> corpus,
                                   const EmbeddingTable& table, SentenceAggregation aggregation);
SimilarityMatrix similarity_matrix(std::span<const Requirement> requirements,
                                   std::span<const ConceptDocument> corpus,
                                   EmbeddingProvider& provider, SentenceAggregation aggregation);
SimilarityMatrix similarity_matrix(std::span<const Requirement> requirements,
                                   std::span<const ConceptDocument> corpus,
                                   const ProviderConfig& provider, SentenceAggregation aggregation);

/// Per row: concepts scoring at least theta, by descending score then
/// ascending IRI, truncated to k.
std::vector<RetrievedSet> retrieve(const SimilarityMatrix& matrix, const MatcherConfig& config);

/// "requirement_id,rank,iri,score" with 1-based ranks and 6-decimal scores.
std::string write_matches_csv(std::span<const RetrievedSet> retrieved);
/// Throws FormatError on a bad header or row.
std::vector<RetrievedSet> read_matches_csv(std::string_view text);

}  // namespace odpx
