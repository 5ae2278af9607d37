#include "odpx/requirements.hpp"

#include <json.hpp>
#include <set>

#include "odpx/corpus.hpp"
#include "odpx/error.hpp"

namespace odpx {

std::vector<Requirement> load_requirements(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text, nullptr, true, true);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("requirements: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("requirements") || !doc["requirements"].is_array()) {
    throw FormatError("requirements: expected an object with a 'requirements' array");
  }
  std::vector<Requirement> out;
  std::set<std::string> seen;
  for (const auto& item : doc["requirements"]) {
    if (!item.is_object() || !item.contains("id") || !item["id"].is_string() ||
        !item.contains("sentences") || !item["sentences"].is_array()) {
      throw FormatError("requirements: each entry needs a string 'id' and a 'sentences' array");
    }
    Requirement r;
    r.id = item["id"].get<std::string>();
    if (r.id.empty()) throw FormatError("requirements: empty id");
    if (!seen.insert(r.id).second) throw FormatError("requirements: duplicate id '" + r.id + "'");
    r.title = item.value("title", r.id);
    r.pattern = item.value("pattern", r.title);
    for (const auto& s : item["sentences"]) {
      if (!s.is_string()) throw FormatError("requirements: '" + r.id + "' has a non-string sentence");
      std::string sentence = collapse_whitespace(s.get<std::string>());
      if (sentence.empty()) throw FormatError("requirements: '" + r.id + "' has an empty sentence");
      r.sentences.push_back(std::move(sentence));
    }
    if (r.sentences.empty()) throw FormatError("requirements: '" + r.id + "' has no sentences");
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace odpx
