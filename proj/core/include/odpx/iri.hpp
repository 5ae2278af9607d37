#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace odpx {

/// An absolute IRI. Equality is exact string equality; ordering is bytewise.
class Iri {
 public:
  /// Throws InvalidIriError unless `text` is an absolute IRI.
  static Iri parse(std::string_view text);
  static std::optional<Iri> try_parse(std::string_view text);
  /// Skips validation; the caller guarantees `text` is absolute and well formed.
  static Iri unchecked(std::string text) { return Iri(std::move(text)); }

  const std::string& str() const noexcept { return value_; }

  /// Text after the last '#', '/' or ':' (the whole IRI if none follows).
  std::string_view local_name() const noexcept;

  auto operator<=>(const Iri&) const = default;
  bool operator==(const Iri&) const = default;

 private:
  explicit Iri(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

/// True when `text` has a scheme and contains no characters forbidden in IRIREF.
bool is_absolute_iri(std::string_view text) noexcept;

/// True when `text` contains no characters forbidden inside an IRI reference.
bool is_valid_iri_reference(std::string_view text) noexcept;

/// Reference resolution against an absolute base (RFC 3986).
std::string resolve_iri(std::string_view base, std::string_view reference);

}  // namespace odpx

template <>
struct std::hash<odpx::Iri> {
  std::size_t operator()(const odpx::Iri& iri) const noexcept {
    return std::hash<std::string>{}(iri.str());
  }
};
