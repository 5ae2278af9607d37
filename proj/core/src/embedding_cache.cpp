#include "odpx/embedding_cache.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "odpx/hash.hpp"

namespace odpx {

namespace {

static_assert(std::endian::native == std::endian::little, "cache encoding assumes little-endian");

std::optional<EmbeddingVector> decode_floats(std::string_view b64, std::size_t dimension) {
  const auto bytes = base64_decode(b64);
  if (!bytes || bytes->size() != dimension * sizeof(float) || dimension == 0) return std::nullopt;
  std::vector<float> values(dimension);
  std::memcpy(values.data(), bytes->data(), bytes->size());
  try {
    return EmbeddingVector(std::move(values));
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

VectorCache::VectorCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_, std::ios::binary);
  if (!in) return;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw FormatError("vector cache " + path_.string() + ":" + std::to_string(line_no) + ": bad record");
    }
    std::size_t dim = 0;
    try {
      dim = std::stoul(line.substr(t1 + 1, t2 - t1 - 1));
    } catch (const std::exception&) {
      throw FormatError("vector cache " + path_.string() + ":" + std::to_string(line_no) + ": bad dimension");
    }
    auto vec = decode_floats(std::string_view(line).substr(t2 + 1), dim);
    if (!vec) {
      throw FormatError("vector cache " + path_.string() + ":" + std::to_string(line_no) + ": bad vector");
    }
    entries_.insert_or_assign(line.substr(0, t1), std::move(*vec));
  }
}

std::string VectorCache::key_hash(std::string_view identity, std::string_view text) {
  std::string key(identity);
  key.push_back('\x1f');
  key.append(text);
  return sha256_hex(key);
}

std::optional<EmbeddingVector> VectorCache::lookup(std::string_view identity, std::string_view text) const {
  const std::string h = key_hash(identity, text);
  std::lock_guard lock(mutex_);
  const auto it = entries_.find(h);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void VectorCache::insert(std::string_view identity, std::string_view text, const EmbeddingVector& vector) {
  const std::string h = key_hash(identity, text);
  std::lock_guard lock(mutex_);
  entries_.insert_or_assign(h, vector);
}

std::size_t VectorCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::string VectorCache::encode_record(const std::string& hash, const EmbeddingVector& vector) {
  const auto values = vector.values();
  const auto* bytes = reinterpret_cast<const unsigned char*>(values.data());
  return hash + "\t" + std::to_string(vector.dimension()) + "\t" +
         base64_encode({bytes, values.size() * sizeof(float)});
}

std::optional<EmbeddingVector> VectorCache::decode_vector(std::string_view base64,
                                                         std::size_t dimension) {
  return decode_floats(base64, dimension);
}

void VectorCache::save() const {
  if (path_.empty()) return;
  std::lock_guard lock(mutex_);
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  const std::filesystem::path tmp = path_.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    for (const auto& [hash, vec] : entries_) out << encode_record(hash, vec) << '\n';
    if (!out) throw Error("vector cache: cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path_);
}

}  // namespace odpx
