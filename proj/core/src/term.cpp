#include "odpx/term.hpp"

#include <algorithm>

#include "odpx/vocab.hpp"

namespace odpx {

Term Term::iri(const Iri& iri) { return Term(TermKind::iri, iri.str(), {}, {}); }

Term Term::blank(std::string label) { return Term(TermKind::blank, std::move(label), {}, {}); }

Term Term::literal(std::string lexical, std::string datatype, std::string language) {
  if (!language.empty()) {
    std::transform(language.begin(), language.end(), language.begin(),
                   [](unsigned char c) { return static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c); });
    datatype.clear();
  } else if (datatype == vocab::kXsdString) {
    datatype.clear();
  }
  return Term(TermKind::literal, std::move(lexical), std::move(datatype), std::move(language));
}

}  // namespace odpx
