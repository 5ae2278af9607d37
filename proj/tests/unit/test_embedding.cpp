#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include "odpx/embedding.hpp"
#include "odpx/embedding_cache.hpp"
#include "odpx/hash.hpp"

using namespace odpx;

namespace {

/// Straightforward re-derivation of the hashed feature vector.
std::vector<double> oracle_embed(const std::string& text, std::size_t dim) {
  std::map<std::string, int> counts;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    ++counts[token];
    const std::string padded = "^" + token + "$";
    for (std::size_t i = 0; i + 3 <= padded.size(); ++i) ++counts[padded.substr(i, 3)];
    token.clear();
  };
  for (const char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c >= 0x80) {
      token.push_back(static_cast<char>(std::tolower(c)));
    } else {
      flush();
    }
  }
  flush();
  std::vector<double> v(dim, 0.0);
  for (const auto& [f, n] : counts) {
    const auto h = fnv1a64(f);
    v[h % dim] += ((h >> 63) ? -1.0 : 1.0) / (1.0 + std::log(n));
  }
  double norm = 0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm > 0)
    for (double& x : v) x /= norm;
  return v;
}

class CountingProvider final : public EmbeddingProvider {
 public:
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override {
    calls += 1;
    seen += texts.size();
    return LocalHashProvider(8).embed(texts);
  }
  std::string identity() const override { return "counting"; }
  int calls = 0;
  std::size_t seen = 0;
};

}  // namespace

TEST_CASE("features: lowercased unigrams plus padded trigrams") {
  const auto f = local_hash_features("Ab, ab!");
  const std::map<std::string, std::size_t> got(f.begin(), f.end());
  CHECK(got == std::map<std::string, std::size_t>{{"ab", 2}, {"^ab", 2}, {"ab$", 2}});
  CHECK(local_hash_features("  ...  ").empty());
  const auto u = local_hash_features("caf\xC3\xA9-x");
  CHECK(u.front().first == "caf\xC3\xA9");
}

TEST_CASE("local hash embedding matches the oracle") {
  for (const std::string text : {"process step", "Heat treatment of steel", "a a a b", "x",
                                 "Temperature, pressure and atmosphere", "caf\xC3\xA9 na\xC3\xAFve"}) {
    for (const std::size_t dim : {2u, 16u, 512u}) {
      const auto v = local_hash_embed(text, dim);
      const auto o = oracle_embed(text, dim);
      REQUIRE(v.dimension() == dim);
      for (std::size_t i = 0; i < dim; ++i) CHECK(v.values()[i] == doctest::Approx(o[i]).epsilon(1e-6));
    }
  }
}

TEST_CASE("local hash embedding properties") {
  const auto a = local_hash_embed("alloy mixing process", 64);
  CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(local_hash_embed("process mixing alloy", 64) == a);
  CHECK(local_hash_embed("ALLOY Mixing process", 64) == a);
  CHECK(local_hash_embed("", 64).is_zero());
  CHECK(local_hash_embed("!!!", 64).is_zero());
  CHECK_THROWS_AS(local_hash_embed("x", 1), ConfigError);
}

TEST_CASE("vectors reject non-finite values") {
  CHECK_THROWS_AS(EmbeddingVector({1.0f, NAN}), Error);
  CHECK_THROWS_AS(EmbeddingVector(std::vector<float>{}), Error);
  CHECK(EmbeddingVector({3.0f, 4.0f}).normalized() == EmbeddingVector({0.6f, 0.8f}));
  CHECK(EmbeddingVector::zeros(3).normalized().is_zero());
}

TEST_CASE("provider configuration validation") {
  ProviderConfig c;
  CHECK_NOTHROW(c.validate());
  c.dimension = 1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  ProviderConfig r;
  r.kind = ProviderKind::remote_http;
  CHECK_THROWS_AS(r.validate(), ConfigError);
  r.endpoint = "http://localhost:8080/v1/embeddings";
  CHECK_NOTHROW(r.validate());
  r.endpoint = "ftp://x";
  CHECK_THROWS_AS(r.validate(), ConfigError);
  r.endpoint = "https://api.example.org/embed";
  r.max_batch_size = 0;
  CHECK_THROWS_AS(r.validate(), ConfigError);
  CHECK(provider_kind_from_name("remote-http") == ProviderKind::remote_http);
  CHECK_FALSE(provider_kind_from_name("openai").has_value());
}

TEST_CASE("vector cache persists and deduplicates") {
  const auto path = std::filesystem::temp_directory_path() / "odpx-cache-test.tsv";
  std::filesystem::remove(path);
  {
    auto inner = std::make_unique<CountingProvider>();
    auto* counter = inner.get();
    CachingProvider p(std::move(inner), std::make_shared<VectorCache>(path));
    const std::vector<std::string> texts = {"a", "b", "a"};
    const auto first = p.embed(texts);
    CHECK(counter->calls == 1);
    CHECK(counter->seen == 2);
    CHECK(first[0] == first[2]);
    p.embed(texts);
    CHECK(counter->calls == 1);
  }
  {
    VectorCache reloaded(path);
    CHECK(reloaded.size() == 2);
    const auto v = reloaded.lookup("counting", "b");
    REQUIRE(v.has_value());
    CHECK(*v == local_hash_embed("b", 8));
    CHECK_FALSE(reloaded.lookup("other", "b").has_value());
  }
  CHECK(VectorCache::key_hash("id", "text") == sha256_hex(std::string("id\x1ftext")));
  {
    std::ofstream bad(path, std::ios::trunc);
    bad << "abc\t2\tnot-base64\n";
  }
  CHECK_THROWS_AS(VectorCache{path}, FormatError);
  std::filesystem::remove(path);
}

TEST_CASE("make_provider honours the configuration") {
  ProviderConfig c;
  c.dimension = 32;
  auto p = make_provider(c);
  CHECK(p->identity() == "local-hash/32");
  const std::vector<std::string> texts = {"one", "two"};
  const auto v = p->embed(texts);
  CHECK(v.size() == 2);
  CHECK(v[0].dimension() == 32);
  CHECK(embed_batch(texts, c) == v);
}
