#include "odpx/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <regex>
#include <unordered_map>

#include "odpx/embedding_cache.hpp"
#include "odpx/hash.hpp"

namespace odpx {

EmbeddingVector::EmbeddingVector(std::vector<float> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error("embedding vector must have positive dimension");
  for (const float v : values_) {
    if (!std::isfinite(v)) throw Error("embedding vector has a non-finite value");
  }
}

EmbeddingVector EmbeddingVector::zeros(std::size_t dimension) {
  return EmbeddingVector(std::vector<float>(dimension, 0.0f));
}

double EmbeddingVector::norm() const noexcept {
  double sum = 0.0;
  for (const float v : values_) sum += static_cast<double>(v) * static_cast<double>(v);
  return std::sqrt(sum);
}

bool EmbeddingVector::is_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](float v) { return v == 0.0f; });
}

EmbeddingVector EmbeddingVector::normalized() const {
  const double n = norm();
  if (n == 0.0) return *this;
  std::vector<float> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    out[i] = static_cast<float>(static_cast<double>(values_[i]) / n);
  }
  return EmbeddingVector(std::move(out));
}

std::optional<ProviderKind> provider_kind_from_name(std::string_view name) {
  if (name == "local-hash") return ProviderKind::local_hash;
  if (name == "remote-http") return ProviderKind::remote_http;
  return std::nullopt;
}

std::string_view to_string(ProviderKind kind) {
  return kind == ProviderKind::local_hash ? "local-hash" : "remote-http";
}

void ProviderConfig::validate() const {
  if (kind == ProviderKind::local_hash) {
    if (dimension < 2) throw ConfigError("provider: dimension must be at least 2");
    return;
  }
  static const std::regex url(R"(^https?://[A-Za-z0-9.\-\[\]:]+(:[0-9]{1,5})?(/[^\s]*)?$)");
  if (!std::regex_match(endpoint, url)) {
    throw ConfigError("provider: invalid endpoint URL '" + endpoint + "'");
  }
  if (max_batch_size == 0) throw ConfigError("provider: max_batch_size must be positive");
  if (max_in_flight == 0) throw ConfigError("provider: max_in_flight must be positive");
  if (timeout.count() <= 0) throw ConfigError("provider: timeout must be positive");
}

namespace {

bool is_token_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

}  // namespace

std::vector<std::pair<std::string, std::size_t>> local_hash_features(std::string_view text) {
  std::vector<std::pair<std::string, std::size_t>> features;
  std::unordered_map<std::string, std::size_t> index;
  auto bump = [&](std::string f) {
    auto [it, inserted] = index.try_emplace(f, features.size());
    if (inserted) {
      features.emplace_back(std::move(f), 1);
    } else {
      ++features[it->second].second;
    }
  };

  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !is_token_byte(static_cast<unsigned char>(text[i]))) ++i;
    std::string token;
    while (i < text.size() && is_token_byte(static_cast<unsigned char>(text[i]))) {
      char c = text[i++];
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
      token.push_back(c);
    }
    if (token.empty()) continue;
    bump(token);
    const std::string padded = "^" + token + "$";
    for (std::size_t k = 0; k + 3 <= padded.size(); ++k) bump(padded.substr(k, 3));
  }
  return features;
}

EmbeddingVector local_hash_embed(std::string_view text, std::size_t dimension) {
  if (dimension < 2) throw ConfigError("local_hash_embed: dimension must be at least 2");
  auto features = local_hash_features(text);
  // Fixed accumulation order makes the result independent of token order.
  std::sort(features.begin(), features.end());
  std::vector<double> acc(dimension, 0.0);
  for (const auto& [feature, count] : features) {
    const std::uint64_t h = fnv1a64(feature);
    const double weight = 1.0 / (1.0 + std::log(static_cast<double>(count)));
    const double sign = (h >> 63) != 0 ? -1.0 : 1.0;
    acc[h % dimension] += sign * weight;
  }
  double sum = 0.0;
  for (const double v : acc) sum += v * v;
  std::vector<float> out(dimension, 0.0f);
  if (sum > 0.0) {
    const double n = std::sqrt(sum);
    for (std::size_t k = 0; k < dimension; ++k) out[k] = static_cast<float>(acc[k] / n);
  }
  return EmbeddingVector(std::move(out));
}

LocalHashProvider::LocalHashProvider(std::size_t dimension) : dimension_(dimension) {
  if (dimension_ < 2) throw ConfigError("local-hash provider: dimension must be at least 2");
}

std::vector<EmbeddingVector> LocalHashProvider::embed(std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(local_hash_embed(t, dimension_));
  return out;
}

std::string LocalHashProvider::identity() const {
  return "local-hash/" + std::to_string(dimension_);
}

CachingProvider::CachingProvider(std::unique_ptr<EmbeddingProvider> inner,
                                 std::shared_ptr<VectorCache> cache)
    : inner_(std::move(inner)), cache_(std::move(cache)) {}

std::vector<EmbeddingVector> CachingProvider::embed(std::span<const std::string> texts) {
  const std::string id = inner_->identity();
  std::vector<std::optional<EmbeddingVector>> found(texts.size());
  std::vector<std::string> misses;
  std::map<std::string, std::size_t> miss_index;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    found[i] = cache_->lookup(id, texts[i]);
    if (!found[i] && miss_index.try_emplace(texts[i], misses.size()).second) {
      misses.push_back(texts[i]);
    }
  }
  if (!misses.empty()) {
    auto fresh = inner_->embed(misses);
    if (fresh.size() != misses.size()) throw ResponseShapeError("provider returned wrong count");
    for (std::size_t i = 0; i < misses.size(); ++i) cache_->insert(id, misses[i], fresh[i]);
    cache_->save();
  }
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  std::optional<std::size_t> dim;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    EmbeddingVector v = found[i] ? *found[i] : *cache_->lookup(id, texts[i]);
    if (dim && *dim != v.dimension()) throw DimensionMismatchError("cached vectors disagree on dimension");
    dim = v.dimension();
    out.push_back(std::move(v));
  }
  return out;
}

std::unique_ptr<EmbeddingProvider> make_provider(const ProviderConfig& config) {
  config.validate();
  std::unique_ptr<EmbeddingProvider> provider;
  if (config.kind == ProviderKind::local_hash) {
    provider = std::make_unique<LocalHashProvider>(config.dimension);
  } else {
    provider = std::make_unique<RemoteHttpProvider>(config);
  }
  if (config.cache_path) {
    provider = std::make_unique<CachingProvider>(std::move(provider),
                                                 std::make_shared<VectorCache>(*config.cache_path));
  }
  return provider;
}

std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts,
                                         const ProviderConfig& config) {
  return make_provider(config)->embed(texts);
}

}  // namespace odpx
