#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "odpx/error.hpp"
#include "odpx/graph.hpp"
#include "odpx/iri.hpp"

namespace odpx {

enum class Syntax { turtle, ntriples };

/// Accepts "turtle"/"ttl" and "ntriples"/"nt".
std::optional<Syntax> syntax_from_name(std::string_view name);
std::string_view to_string(Syntax syntax);
/// Guess from the file extension; Turtle unless the path ends in ".nt".
Syntax syntax_from_path(std::string_view path);

enum class ParseErrorKind { syntax, undefined_prefix, invalid_iri, invalid_utf8 };

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& what);

  ParseErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
};

/// Parses a whole UTF-8 document. Prefixed names are expanded and relative
/// IRIs resolved against `base` (or @base/BASE directives).
OntologyGraph parse_document(std::string_view bytes, Syntax syntax,
                             const std::optional<Iri>& base = std::nullopt);

/// Appends a document's triples to `builder`. Blank node labels are scoped
/// to the document. On error the builder may hold a partial document.
void parse_into(GraphBuilder& builder, std::string_view bytes, Syntax syntax,
                const std::optional<Iri>& base = std::nullopt);

/// Index of the first byte that breaks UTF-8 well-formedness, if any.
std::optional<std::size_t> find_invalid_utf8(std::string_view bytes) noexcept;

}  // namespace odpx
