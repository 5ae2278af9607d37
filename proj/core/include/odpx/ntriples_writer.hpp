#pragma once

#include <string>

#include "odpx/graph.hpp"
#include "odpx/term.hpp"

namespace odpx {

/// N-Triples spelling of one term (IRIs in angle brackets, escaped literals).
std::string format_term(const Term& term);

/// Canonical N-Triples: one line per triple, byte-sorted, blank nodes
/// renamed _:b0, _:b1, ... in first-appearance order.
///
/// Blank nodes are first given structural colours by iterated neighbourhood
/// hashing. Triples are then ordered with each blank node spelled as its
/// colour, and blank nodes are numbered in first-appearance order of that
/// ordering. Because the colours do not depend on input labels, the output
/// is a fixpoint of parse-then-serialize.
std::string serialize_ntriples(const OntologyGraph& graph);

}  // namespace odpx
