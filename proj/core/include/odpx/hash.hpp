#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace odpx {

/// 64-bit FNV-1a over raw bytes.
constexpr std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view bytes);

std::string base64_encode(std::span<const unsigned char> bytes);
/// Returns nullopt on any character outside the standard alphabet or bad padding.
std::optional<std::string> base64_decode(std::string_view text);

}  // namespace odpx
