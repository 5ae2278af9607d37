#include <doctest.h>

#include <map>
#include <random>

#include "odpx/matcher.hpp"
#include "support/oracles.hpp"

using namespace odpx;
using odpx::testing::oracle_cosine;

namespace {

/// Serves fixed vectors by text.
class TableProvider final : public EmbeddingProvider {
 public:
  explicit TableProvider(std::map<std::string, std::vector<float>> table) : table_(std::move(table)) {}
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override {
    std::vector<EmbeddingVector> out;
    for (const auto& t : texts) out.push_back(EmbeddingVector(table_.at(t)).normalized());
    return out;
  }
  std::string identity() const override { return "table"; }

 private:
  std::map<std::string, std::vector<float>> table_;
};

ConceptDocument doc(const std::string& iri, const std::string& text) {
  ConceptDocument d{Iri::parse(iri), {text}, {}, {}, text};
  return d;
}

const Iri A = Iri::parse("http://x.org/A");
const Iri B = Iri::parse("http://x.org/B");
const Iri C = Iri::parse("http://x.org/C");

}  // namespace

TEST_CASE("cosine") {
  const EmbeddingVector a({1.0f, 0.0f});
  const EmbeddingVector b({0.0f, 2.0f});
  CHECK(cosine(a, a) == doctest::Approx(1.0));
  CHECK(cosine(a, b) == doctest::Approx(0.0));
  CHECK(cosine(a, EmbeddingVector({-3.0f, 0.0f})) == doctest::Approx(-1.0));
  CHECK(cosine(a, EmbeddingVector::zeros(2)) == 0.0);
  CHECK_THROWS_AS(cosine(a, EmbeddingVector({1.0f, 2.0f, 3.0f})), DimensionMismatchError);
  std::mt19937 rng(7);
  std::normal_distribution<float> g;
  for (int i = 0; i < 50; ++i) {
    std::vector<float> x(9), y(9);
    for (auto& v : x) v = g(rng);
    for (auto& v : y) v = g(rng);
    CHECK(cosine(EmbeddingVector(x), EmbeddingVector(y)) ==
          doctest::Approx(oracle_cosine({x.begin(), x.end()}, {y.begin(), y.end()})).epsilon(1e-9));
  }
}

TEST_CASE("matcher configuration") {
  MatcherConfig c;
  CHECK_NOTHROW(c.validate());
  c.k = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.k = 1;
  c.theta = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK(aggregation_from_name("mean") == SentenceAggregation::mean);
  CHECK_FALSE(aggregation_from_name("median").has_value());
}

TEST_CASE("similarity matrix rejects bad shapes") {
  CHECK_THROWS_AS(SimilarityMatrix({"r"}, {A, B}, {0.1}), Error);
  CHECK_THROWS_AS(SimilarityMatrix({"r"}, {A}, {NAN}), Error);
}

TEST_CASE("retrieve orders by score then IRI and applies theta and k") {
  const SimilarityMatrix m({"r1", "r2"}, {C, A, B}, {0.5, 0.5, 0.9, -0.1, 0.2, 0.1});
  MatcherConfig c;
  c.k = 2;
  const auto r = retrieve(m, c);
  REQUIRE(r.size() == 2);
  CHECK(r[0].requirement_id == "r1");
  CHECK(r[0].ranked == std::vector<ScoredIri>{{B, 0.9}, {A, 0.5}});
  CHECK(r[1].ranked == std::vector<ScoredIri>{{A, 0.2}, {B, 0.1}});
  c.k = 20;
  c.theta = 0.3;
  CHECK(retrieve(m, c)[1].ranked.empty());
  c.theta = -1.0;
  CHECK(retrieve(m, c)[1].ranked.size() == 3);
}

TEST_CASE("sentence aggregation") {
  const std::vector<Requirement> reqs = {{"r", "R", {"s1", "s2"}, ""}};
  const std::vector<ConceptDocument> corpus = {doc("http://x.org/A", "a"), doc("http://x.org/B", "b")};
  TableProvider p({{"s1", {1, 0, 0}}, {"s2", {0, 1, 0}}, {"s1 s2", {1, 1, 1}},
                   {"a", {1, 0, 0}}, {"b", {1, 1, 0}}});
  const auto mx = similarity_matrix(reqs, corpus, p, SentenceAggregation::max);
  CHECK(mx.at(0, 0) == doctest::Approx(1.0));
  CHECK(mx.at(0, 1) == doctest::Approx(std::sqrt(0.5)));
  const auto mean = similarity_matrix(reqs, corpus, p, SentenceAggregation::mean);
  CHECK(mean.at(0, 0) == doctest::Approx(0.5));
  CHECK(mean.at(0, 1) == doctest::Approx(std::sqrt(0.5)));
  const auto joined = similarity_matrix(reqs, corpus, p, SentenceAggregation::joined);
  CHECK(joined.at(0, 0) == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(joined.at(0, 1) == doctest::Approx(2.0 / std::sqrt(6.0)));
}

TEST_CASE("embedding table round trip drives the same matrix") {
  const std::vector<Requirement> reqs = {{"r1", "R", {"heat treatment", "furnace"}, ""}};
  const std::vector<ConceptDocument> corpus = {doc("http://x.org/A", "heat treatment step"),
                                               doc("http://x.org/B", "agent")};
  LocalHashProvider p(64);
  const auto table = embed_inputs(reqs, corpus, p, SentenceAggregation::max);
  CHECK(table.size() == 4);
  CHECK(table.contains("concept http://x.org/A"));
  CHECK(table.contains("requirement r1 1"));
  const auto text = write_embedding_table(table);
  CHECK(read_embedding_table(text) == table);
  const auto direct = similarity_matrix(reqs, corpus, p, SentenceAggregation::max);
  const auto via = similarity_matrix(reqs, corpus, read_embedding_table(text), SentenceAggregation::max);
  for (std::size_t j = 0; j < 2; ++j) CHECK(direct.at(0, j) == via.at(0, j));
  EmbeddingTable partial = table;
  partial.erase("concept http://x.org/B");
  CHECK_THROWS_AS(similarity_matrix(reqs, corpus, partial, SentenceAggregation::max), FormatError);
  CHECK_THROWS_AS(read_embedding_table("k\t2\t???\n"), FormatError);
  CHECK_THROWS_AS(read_embedding_table("no tabs\n"), FormatError);
}

TEST_CASE("matches CSV round trip") {
  const std::vector<RetrievedSet> r = {{"r1", {{B, 0.9}, {A, -0.0000001}}}, {"r2", {}}};
  const auto csv = write_matches_csv(r);
  CHECK(csv == "requirement_id,rank,iri,score\n"
               "r1,1,http://x.org/B,0.900000\n"
               "r1,2,http://x.org/A,0.000000\n");
  const auto back = read_matches_csv(csv);
  REQUIRE(back.size() == 1);
  CHECK(back[0].ranked.size() == 2);
  CHECK(back[0].ranked[0].iri == B);
  CHECK_THROWS_AS(read_matches_csv("wrong,header\n"), FormatError);
  CHECK_THROWS_AS(read_matches_csv("requirement_id,rank,iri,score\nr1,x,http://x.org/A,0.1\n"),
                  FormatError);
  CHECK_THROWS_AS(read_matches_csv("requirement_id,rank,iri,score\nr1,1,notaniri,0.1\n"), FormatError);
}
