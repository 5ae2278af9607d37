#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace odpx {

/// A modelling requirement phrased as one or more sentences.
struct Requirement {
  std::string id;
  std::string title;
  std::vector<std::string> sentences;
  /// Column-group label in reports, e.g. "Process ODP"; defaults to the title.
  std::string pattern;

  bool operator==(const Requirement&) const = default;
};

/// Reads {"requirements": [{"id", "title", "pattern"?, "sentences": [...]}, ...]}.
/// Throws FormatError on duplicate ids, empty sentence lists or empty sentences.
std::vector<Requirement> load_requirements(std::string_view json_text);

}  // namespace odpx
