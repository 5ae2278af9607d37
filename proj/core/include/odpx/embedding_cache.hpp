#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "odpx/embedding.hpp"

namespace odpx {

/// Persistent map from (provider identity, exact text) to vector.
///
/// File layout, one entry per line, sorted by key hash:
///   <sha256 hex of key> TAB <dimension> TAB <base64 of little-endian float32s>
/// Lookups and inserts are thread-safe; save() rewrites the file atomically.
class VectorCache {
 public:
  VectorCache() = default;
  /// Loads `path` if it exists. Throws FormatError on a corrupt record.
  explicit VectorCache(std::filesystem::path path);

  static std::string key_hash(std::string_view identity, std::string_view text);

  std::optional<EmbeddingVector> lookup(std::string_view identity, std::string_view text) const;
  void insert(std::string_view identity, std::string_view text, const EmbeddingVector& vector);
  std::size_t size() const;

  /// No-op for an in-memory cache.
  void save() const;

  static std::string encode_record(const std::string& hash, const EmbeddingVector& vector);
  /// Inverse of the vector part of encode_record; nullopt on bad input.
  static std::optional<EmbeddingVector> decode_vector(std::string_view base64, std::size_t dimension);

 private:
  std::filesystem::path path_;
  mutable std::mutex mutex_;
  std::map<std::string, EmbeddingVector> entries_;
};

}  // namespace odpx
