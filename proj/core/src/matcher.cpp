#include "odpx/matcher.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

#include "odpx/csv.hpp"
#include "odpx/embedding_cache.hpp"

namespace odpx {

std::optional<SentenceAggregation> aggregation_from_name(std::string_view name) {
  if (name == "max") return SentenceAggregation::max;
  if (name == "mean") return SentenceAggregation::mean;
  if (name == "joined") return SentenceAggregation::joined;
  return std::nullopt;
}

std::string_view to_string(SentenceAggregation aggregation) {
  switch (aggregation) {
    case SentenceAggregation::max: return "max";
    case SentenceAggregation::mean: return "mean";
    case SentenceAggregation::joined: return "joined";
  }
  return "max";
}

void MatcherConfig::validate() const {
  if (k == 0) throw ConfigError("matcher: k must be at least 1");
  if (!(theta >= -1.0 && theta <= 1.0)) throw ConfigError("matcher: theta must lie in [-1, 1]");
}

SimilarityMatrix::SimilarityMatrix(std::vector<std::string> requirement_ids,
                                   std::vector<Iri> concept_iris, std::vector<double> scores)
    : requirement_ids_(std::move(requirement_ids)),
      concept_iris_(std::move(concept_iris)),
      scores_(std::move(scores)) {
  if (scores_.size() != requirement_ids_.size() * concept_iris_.size()) {
    throw Error("similarity matrix: score count does not match shape");
  }
  for (const double s : scores_) {
    if (!std::isfinite(s)) throw Error("similarity matrix: non-finite score");
  }
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dimension() != b.dimension()) {
    throw DimensionMismatchError("cosine: dimensions " + std::to_string(a.dimension()) + " and " +
                                 std::to_string(b.dimension()));
  }
  const auto x = a.values();
  const auto y = b.values();
  double dot = 0.0;
  double nx = 0.0;
  double ny = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = x[i];
    const double v = y[i];
    dot += u * v;
    nx += u * u;
    ny += v * v;
  }
  if (nx == 0.0 || ny == 0.0) return 0.0;
  return dot / (std::sqrt(nx) * std::sqrt(ny));
}

namespace {

std::string concept_key(const Iri& iri) { return "concept " + iri.str(); }

std::string requirement_key(const std::string& id, std::size_t n) {
  return "requirement " + id + " " + std::to_string(n);
}

std::vector<std::string> requirement_units(const Requirement& r, SentenceAggregation aggregation) {
  if (aggregation != SentenceAggregation::joined) return r.sentences;
  std::string joined;
  for (const auto& s : r.sentences) joined += (joined.empty() ? "" : " ") + s;
  return {joined};
}

}  // namespace

EmbeddingTable embed_inputs(std::span<const Requirement> requirements,
                            std::span<const ConceptDocument> corpus, EmbeddingProvider& provider,
                            SentenceAggregation aggregation) {
  std::vector<std::string> keys;
  std::vector<std::string> texts;
  for (const Requirement& r : requirements) {
    const auto units = requirement_units(r, aggregation);
    for (std::size_t n = 0; n < units.size(); ++n) {
      keys.push_back(requirement_key(r.id, n));
      texts.push_back(units[n]);
    }
  }
  for (const ConceptDocument& d : corpus) {
    keys.push_back(concept_key(d.iri));
    texts.push_back(d.combined_text);
  }
  EmbeddingTable table;
  if (texts.empty()) return table;
  auto vectors = provider.embed(texts);
  if (vectors.size() != texts.size()) {
    throw ResponseShapeError("provider returned the wrong number of vectors");
  }
  for (std::size_t i = 0; i < keys.size(); ++i) table.insert_or_assign(keys[i], std::move(vectors[i]));
  return table;
}

std::string write_embedding_table(const EmbeddingTable& table) {
  std::string out;
  for (const auto& [key, vec] : table) out += VectorCache::encode_record(key, vec) + "\n";
  return out;
}

EmbeddingTable read_embedding_table(std::string_view text) {
  EmbeddingTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const std::string where = "embedding table line " + std::to_string(line_no);
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos) throw FormatError(where + ": expected 3 fields");
    std::size_t dim = 0;
    const auto dim_text = line.substr(t1 + 1, t2 - t1 - 1);
    const auto [ptr, ec] = std::from_chars(dim_text.data(), dim_text.data() + dim_text.size(), dim);
    if (ec != std::errc() || ptr != dim_text.data() + dim_text.size()) {
      throw FormatError(where + ": bad dimension");
    }
    auto vec = VectorCache::decode_vector(line.substr(t2 + 1), dim);
    if (!vec) throw FormatError(where + ": bad vector payload");
    table.insert_or_assign(std::string(line.substr(0, t1)), std::move(*vec));
  }
  return table;
}

SimilarityMatrix similarity_matrix(std::span<const Requirement> requirements,
                                   std::span<const ConceptDocument> corpus,
                                   const EmbeddingTable& table, SentenceAggregation aggregation) {
  auto lookup = [&table](const std::string& key) -> const EmbeddingVector& {
    const auto it = table.find(key);
    if (it == table.end()) throw FormatError("embedding table has no entry '" + key + "'");
    return it->second;
  };
  std::vector<std::string> ids;
  std::vector<std::vector<const EmbeddingVector*>> units;
  for (const Requirement& r : requirements) {
    ids.push_back(r.id);
    std::vector<const EmbeddingVector*> v;
    const std::size_t n = requirement_units(r, aggregation).size();
    for (std::size_t i = 0; i < n; ++i) v.push_back(&lookup(requirement_key(r.id, i)));
    units.push_back(std::move(v));
  }
  std::vector<Iri> iris;
  std::vector<const EmbeddingVector*> concepts;
  for (const ConceptDocument& d : corpus) {
    iris.push_back(d.iri);
    concepts.push_back(&lookup(concept_key(d.iri)));
  }

  std::vector<double> scores(ids.size() * iris.size(), 0.0);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = 0; j < iris.size(); ++j) {
      double acc = aggregation == SentenceAggregation::max ? -2.0 : 0.0;
      for (const EmbeddingVector* u : units[i]) {
        const double c = cosine(*u, *concepts[j]);
        acc = aggregation == SentenceAggregation::max ? std::max(acc, c) : acc + c;
      }
      if (aggregation == SentenceAggregation::mean) acc /= static_cast<double>(units[i].size());
      scores[i * iris.size() + j] = acc;
    }
  }
  return SimilarityMatrix(std::move(ids), std::move(iris), std::move(scores));
}

SimilarityMatrix similarity_matrix(std::span<const Requirement> requirements,
                                   std::span<const ConceptDocument> corpus,
                                   EmbeddingProvider& provider, SentenceAggregation aggregation) {
  const EmbeddingTable table = embed_inputs(requirements, corpus, provider, aggregation);
  return similarity_matrix(requirements, corpus, table, aggregation);
}

SimilarityMatrix similarity_matrix(std::span<const Requirement> requirements,
                                   std::span<const ConceptDocument> corpus,
                                   const ProviderConfig& provider, SentenceAggregation aggregation) {
  auto p = make_provider(provider);
  return similarity_matrix(requirements, corpus, *p, aggregation);
}

std::vector<RetrievedSet> retrieve(const SimilarityMatrix& matrix, const MatcherConfig& config) {
  config.validate();
  std::vector<RetrievedSet> out;
  out.reserve(matrix.rows());
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    RetrievedSet set{matrix.requirement_ids()[i], {}};
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      const double s = matrix.at(i, j);
      if (s >= config.theta) set.ranked.push_back({matrix.concept_iris()[j], s});
    }
    std::sort(set.ranked.begin(), set.ranked.end(), [](const ScoredIri& a, const ScoredIri& b) {
      return a.score != b.score ? a.score > b.score : a.iri < b.iri;
    });
    set.ranked.erase(std::unique(set.ranked.begin(), set.ranked.end(),
                                 [](const ScoredIri& a, const ScoredIri& b) { return a.iri == b.iri; }),
                     set.ranked.end());
    if (set.ranked.size() > config.k) set.ranked.erase(set.ranked.begin() + static_cast<std::ptrdiff_t>(config.k), set.ranked.end());
    out.push_back(std::move(set));
  }
  return out;
}

std::string write_matches_csv(std::span<const RetrievedSet> retrieved) {
  std::string out = "requirement_id,rank,iri,score\n";
  char buf[64];
  for (const RetrievedSet& set : retrieved) {
    for (std::size_t r = 0; r < set.ranked.size(); ++r) {
      const double score = set.ranked[r].score;
      std::snprintf(buf, sizeof buf, "%.6f", score);
      std::string shown = buf;
      if (shown == "-0.000000") shown = "0.000000";
      out += csv_field(set.requirement_id) + "," + std::to_string(r + 1) + "," +
             csv_field(set.ranked[r].iri.str()) + "," + shown + "\n";
    }
  }
  return out;
}

std::vector<RetrievedSet> read_matches_csv(std::string_view text) {
  const auto records = parse_csv(text);
  if (records.empty()) throw FormatError("matches CSV: missing header");
  const std::vector<std::string> header = {"requirement_id", "rank", "iri", "score"};
  if (records.front().fields != header) {
    throw FormatError("matches CSV: header must be requirement_id,rank,iri,score");
  }
  std::vector<RetrievedSet> out;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& rec = records[i];
    const std::string where = "matches CSV line " + std::to_string(rec.line);
    if (rec.fields.size() != 4) throw FormatError(where + ": expected 4 fields");
    auto iri = Iri::try_parse(rec.fields[2]);
    if (!iri) throw FormatError(where + ": invalid IRI '" + rec.fields[2] + "'");
    double score = 0.0;
    try {
      std::size_t used = 0;
      score = std::stod(rec.fields[3], &used);
      if (used != rec.fields[3].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw FormatError(where + ": invalid score");
    }
    auto [it, inserted] = index.try_emplace(rec.fields[0], out.size());
    if (inserted) out.push_back({rec.fields[0], {}});
    auto& ranked = out[it->second].ranked;
    std::size_t rank = 0;
    const auto& rf = rec.fields[1];
    const auto [end, ec] = std::from_chars(rf.data(), rf.data() + rf.size(), rank);
    if (ec != std::errc() || end != rf.data() + rf.size() || rank != ranked.size() + 1) {
      throw FormatError(where + ": rank must be " + std::to_string(ranked.size() + 1));
    }
    ranked.push_back({*iri, score});
  }
  return out;
}

}  // namespace odpx
