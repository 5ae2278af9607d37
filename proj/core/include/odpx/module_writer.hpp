#pragma once

#include <string>

#include "odpx/extract.hpp"

namespace odpx {

/// "urn:odpx:module:<source>:<digest>", the digest covering the request and
/// the module body.
std::string module_iri(const OntologyModule& module);

/// Turtle document: an owl:Ontology header carrying the source, method,
/// intermediates mode, seeds and tool version, then one block per subject
/// with declarations, annotations and axioms. Output is deterministic.
std::string emit_module(const OntologyModule& module);

}  // namespace odpx
