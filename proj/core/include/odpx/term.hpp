#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "odpx/iri.hpp"

namespace odpx {

enum class TermKind : std::uint8_t { iri, blank, literal };

/// An RDF term. Literals carry an optional datatype IRI or language tag;
/// xsd:string literals are stored without a datatype.
class Term {
 public:
  static Term iri(const Iri& iri);
  static Term blank(std::string label);
  static Term literal(std::string lexical, std::string datatype = {},
                      std::string language = {});

  TermKind kind() const noexcept { return kind_; }
  bool is_iri() const noexcept { return kind_ == TermKind::iri; }
  bool is_blank() const noexcept { return kind_ == TermKind::blank; }
  bool is_literal() const noexcept { return kind_ == TermKind::literal; }

  /// IRI string, blank label or literal lexical form depending on kind.
  const std::string& value() const noexcept { return value_; }
  const std::string& datatype() const noexcept { return datatype_; }
  const std::string& language() const noexcept { return language_; }

  /// Precondition: is_iri().
  Iri as_iri() const { return Iri::unchecked(value_); }

  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;

 private:
  Term(TermKind kind, std::string value, std::string datatype, std::string language)
      : kind_(kind),
        value_(std::move(value)),
        datatype_(std::move(datatype)),
        language_(std::move(language)) {}

  TermKind kind_ = TermKind::iri;
  std::string value_;
  std::string datatype_;
  std::string language_;
};

struct Triple {
  Term subject;
  Iri predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;
  bool operator==(const Triple&) const = default;
};

}  // namespace odpx
