#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "odpx/error.hpp"

namespace odpx {

/// Dense float vector; all values finite.
class EmbeddingVector {
 public:
  /// Throws Error on a NaN/Inf value or an empty vector.
  explicit EmbeddingVector(std::vector<float> values);
  static EmbeddingVector zeros(std::size_t dimension);

  std::size_t dimension() const noexcept { return values_.size(); }
  std::span<const float> values() const noexcept { return values_; }
  double norm() const noexcept;
  bool is_zero() const noexcept;
  /// Unit-length copy, or the zero vector unchanged.
  EmbeddingVector normalized() const;

  bool operator==(const EmbeddingVector&) const = default;

 private:
  std::vector<float> values_;
};

enum class ProviderKind { local_hash, remote_http };

std::optional<ProviderKind> provider_kind_from_name(std::string_view name);
std::string_view to_string(ProviderKind kind);

struct ProviderConfig {
  ProviderKind kind = ProviderKind::local_hash;
  /// Local provider only.
  std::size_t dimension = 512;
  // Remote provider only.
  std::string endpoint;
  std::string model = "hkunlp/instructor-large";
  /// Name of the environment variable holding a bearer token; empty for none.
  std::string auth_token_env = "ODPX_EMBEDDING_TOKEN";
  std::chrono::milliseconds timeout{30000};
  std::size_t max_batch_size = 64;
  std::size_t max_in_flight = 4;
  /// Persistent vector cache; unset disables caching.
  std::optional<std::filesystem::path> cache_path;

  /// Throws ConfigError on a zero/one dimension, a bad URL or zero limits.
  void validate() const;
};

class EmbeddingError : public Error {
 public:
  using Error::Error;
};
/// Connection refused, timeout, TLS failure.
class TransportError : public EmbeddingError {
 public:
  using EmbeddingError::EmbeddingError;
};
class HttpStatusError : public EmbeddingError {
 public:
  HttpStatusError(int status, const std::string& what) : EmbeddingError(what), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};
/// Body is not JSON, lacks data[].embedding, has the wrong item count or non-numbers.
class ResponseShapeError : public EmbeddingError {
 public:
  using EmbeddingError::EmbeddingError;
};
/// Vectors within one batch disagree on dimension, or mismatch the expected one.
class DimensionMismatchError : public EmbeddingError {
 public:
  using EmbeddingError::EmbeddingError;
};

/// Turns texts into vectors. Outputs are index-aligned with inputs, share one
/// dimension and are L2-normalized (or all-zero). Either the whole batch is
/// returned or an exception is thrown.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::vector<EmbeddingVector> embed(std::span<const std::string> texts) = 0;
  /// Stable description of what produces the vectors, used as the cache key prefix.
  virtual std::string identity() const = 0;
};

/// Hashed bag of word unigrams and boundary-padded character trigrams.
///
/// Text is lower-cased (ASCII) and split on anything that is not an ASCII
/// letter, digit or non-ASCII byte. Each distinct feature f with count c adds
/// 1 / (1 + ln c) at bucket fnv1a64(f) mod D, negated when bit 63 of the hash
/// is set. The result is L2-normalized; a text without features maps to zero.
EmbeddingVector local_hash_embed(std::string_view text, std::size_t dimension);

/// Features (unigrams and trigrams) of `text` with their counts, in first-seen order.
std::vector<std::pair<std::string, std::size_t>> local_hash_features(std::string_view text);

class LocalHashProvider final : public EmbeddingProvider {
 public:
  explicit LocalHashProvider(std::size_t dimension);
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;
  std::string identity() const override;

 private:
  std::size_t dimension_;
};

/// Client for a JSON embeddings endpoint: POST {"input": [...], "model": m},
/// response {"data": [{"embedding": [...]}, ...]}.
class RemoteHttpProvider final : public EmbeddingProvider {
 public:
  explicit RemoteHttpProvider(ProviderConfig config);
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;
  std::string identity() const override;

 private:
  std::vector<EmbeddingVector> post_chunk(std::span<const std::string> texts) const;

  ProviderConfig config_;
  std::string scheme_host_port_;
  std::string path_;
  std::optional<std::string> token_;
};

class VectorCache;

/// Serves repeated texts from a VectorCache and forwards misses in one batch.
class CachingProvider final : public EmbeddingProvider {
 public:
  CachingProvider(std::unique_ptr<EmbeddingProvider> inner, std::shared_ptr<VectorCache> cache);
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;
  std::string identity() const override { return inner_->identity(); }

 private:
  std::unique_ptr<EmbeddingProvider> inner_;
  std::shared_ptr<VectorCache> cache_;
};

/// Builds the configured provider, wrapped in a CachingProvider when cache_path is set.
std::unique_ptr<EmbeddingProvider> make_provider(const ProviderConfig& config);

std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts,
                                         const ProviderConfig& config);

}  // namespace odpx
