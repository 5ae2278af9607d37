#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace odpx {

struct CsvRecord {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// RFC 4180 records (quoted fields, doubled quotes, CRLF or LF). Blank
/// lines are skipped. Throws FormatError on an unterminated quote.
std::vector<CsvRecord> parse_csv(std::string_view text);

/// Quotes a field when it contains a comma, quote or line break.
std::string csv_field(std::string_view value);

}  // namespace odpx
