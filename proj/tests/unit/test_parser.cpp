#include <doctest.h>

#include "odpx/pipeline.hpp"
#include "odpx/rdf_parser.hpp"
#include "odpx/vocab.hpp"
#include "support/graphs.hpp"

using namespace odpx;

namespace {

std::string fixture(const std::string& name) { return read_file(std::string(ODPX_DATA_DIR) + "/fixtures/" + name); }

OntologyGraph ttl(std::string_view text) { return parse_document(text, Syntax::turtle); }

ParseError parse_failure(std::string_view text, Syntax syntax = Syntax::turtle) {
  try {
    parse_document(text, syntax);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("document parsed but should not have");
  return ParseError(ParseErrorKind::syntax, 0, 0, "");
}

const Term& only_object(const OntologyGraph& g, std::string_view s, std::string_view p) {
  static std::vector<Term> keep;
  auto objs = g.objects(Term::iri(Iri::parse(s)), p);
  REQUIRE(objs.size() == 1);
  keep.push_back(objs.front());
  return keep.back();
}

}  // namespace

TEST_CASE("turtle fixtures agree with an independent N-Triples rendering") {
  for (const std::string name : {"toy", "bare", "features"}) {
    CAPTURE(name);
    const auto from_ttl = parse_document(fixture(name + ".ttl"), Syntax::turtle);
    const auto from_nt = parse_document(fixture(name + ".nt"), Syntax::ntriples);
    CHECK(from_ttl.size() == from_nt.size());
    CHECK(testing::isomorphic(from_ttl, from_nt));
  }
}

TEST_CASE("toy fixture has the expected shape") {
  const auto g = parse_document(fixture("toy.ttl"), Syntax::turtle);
  CHECK(g.size() == 48);
  CHECK(g.declared_classes().size() == 6);
  CHECK(g.declared_object_properties().size() == 5);
  CHECK(g.ontology_iris().size() == 1);
}

TEST_CASE("prefixes, base and relative IRIs") {
  const auto g = ttl("@base <http://a.org/x/y> .\n@prefix p: <http://p.org/> .\n<z> p:q <../w#f> .");
  REQUIRE(g.size() == 1);
  const Triple& t = g.triples().front();
  CHECK(t.subject.value() == "http://a.org/x/z");
  CHECK(t.predicate.str() == "http://p.org/q");
  CHECK(t.object.value() == "http://a.org/w#f");
}

TEST_CASE("literal forms") {
  const auto g = ttl(R"(@prefix e: <http://e.org/> .
e:s e:i 12 ; e:d -0.5 ; e:f 1e2 ; e:b true ; e:l "hi"@EN ; e:x "v"^^<http://www.w3.org/2001/XMLSchema#string> .)");
  CHECK(only_object(g, "http://e.org/s", "http://e.org/i").datatype() == vocab::kXsdInteger);
  CHECK(only_object(g, "http://e.org/s", "http://e.org/d").datatype() == vocab::kXsdDecimal);
  CHECK(only_object(g, "http://e.org/s", "http://e.org/f").datatype() == vocab::kXsdDouble);
  CHECK(only_object(g, "http://e.org/s", "http://e.org/b").datatype() == vocab::kXsdBoolean);
  CHECK(only_object(g, "http://e.org/s", "http://e.org/l").language() == "en");
  CHECK(only_object(g, "http://e.org/s", "http://e.org/x").datatype().empty());
}

TEST_CASE("string escapes decode") {
  const auto g = ttl(R"(<http://e/s> <http://e/p> "a\tbé\U0001F600\"" .)");
  CHECK(g.triples().front().object.value() == "a\tb\xC3\xA9\xF0\x9F\x98\x80\"");
}

TEST_CASE("collections expand to rdf:first/rest chains") {
  const auto g = ttl("<http://e/s> <http://e/p> ( <http://e/a> <http://e/b> ) .");
  CHECK(g.size() == 5);
  CHECK(g.with_predicate(Iri::parse(vocab::kRdfFirst)).size() == 2);
  const auto empty = ttl("<http://e/s> <http://e/p> ( ) .");
  CHECK(empty.triples().front().object.value() == vocab::kRdfNil);
}

TEST_CASE("blank node labels are scoped per document") {
  GraphBuilder b;
  parse_into(b, "_:x <http://e/p> <http://e/o> .", Syntax::turtle);
  parse_into(b, "_:x <http://e/p> <http://e/o> .", Syntax::turtle);
  CHECK(std::move(b).build().size() == 2);
}

TEST_CASE("trailing dot after a prefixed name ends the statement") {
  const auto g = ttl("@prefix e: <http://e/> . e:s e:p e:o.");
  REQUIRE(g.size() == 1);
  CHECK(g.triples().front().object.value() == "http://e/o");
}

TEST_CASE("errors carry kind and position") {
  auto e = parse_failure("@prefix e: <http://e/> .\ne:s e:p\n  x:o .");
  CHECK(e.kind() == ParseErrorKind::undefined_prefix);
  CHECK(e.line() == 3);
  CHECK(e.column() == 3);
  CHECK(std::string(e.what()).find("line 3, column 3") != std::string::npos);

  CHECK(parse_failure("<http://e/s> <http://e/p> \"open .").kind() == ParseErrorKind::syntax);
  CHECK(parse_failure("<http://e/s> <http://e/p> <http://e/o>").kind() == ParseErrorKind::syntax);
  CHECK(parse_failure("<rel> <http://e/p> <http://e/o> .").kind() == ParseErrorKind::invalid_iri);
  CHECK(parse_failure("<http://e/s> <http://e/p> \"\xC3\x28\" .").kind() == ParseErrorKind::invalid_utf8);
  CHECK(parse_failure("\"lit\" <http://e/p> <http://e/o> .").kind() == ParseErrorKind::syntax);
}

TEST_CASE("N-Triples mode rejects Turtle-only syntax") {
  CHECK_NOTHROW(parse_document("<http://e/s> <http://e/p> _:b .\n", Syntax::ntriples));
  CHECK_THROWS_AS(parse_document("@prefix e: <http://e/> .", Syntax::ntriples), ParseError);
  CHECK_THROWS_AS(parse_document("<http://e/s> <http://e/p> 12 .", Syntax::ntriples), ParseError);
  CHECK_THROWS_AS(parse_document("<http://e/s> a <http://e/o> .", Syntax::ntriples), ParseError);
  CHECK_THROWS_AS(parse_document("<http://e/s> <http://e/p> <http://e/o> ; <http://e/q> <http://e/r> .",
                                 Syntax::ntriples),
                  ParseError);
}

TEST_CASE("deep nesting is bounded") {
  std::string doc = "<http://e/s> <http://e/p> ";
  for (int i = 0; i < 300; ++i) doc += "[ <http://e/p> ";
  doc += "<http://e/o>";
  for (int i = 0; i < 300; ++i) doc += " ]";
  doc += " .";
  CHECK_THROWS_AS(ttl(doc), ParseError);
}

TEST_CASE("a byte-order mark is ignored and the empty document is empty") {
  CHECK(ttl("\xEF\xBB\xBF<http://e/s> <http://e/p> <http://e/o> .").size() == 1);
  CHECK(ttl("").empty());
  CHECK(ttl("# only a comment\n").empty());
}

TEST_CASE("syntax names") {
  CHECK(syntax_from_name("ttl") == Syntax::turtle);
  CHECK(syntax_from_name("nt") == Syntax::ntriples);
  CHECK_FALSE(syntax_from_name("rdfxml").has_value());
  CHECK(syntax_from_path("a/b.nt") == Syntax::ntriples);
  CHECK(syntax_from_path("a/b.ttl") == Syntax::turtle);
}

TEST_CASE("invalid UTF-8 is located") {
  CHECK_FALSE(find_invalid_utf8("caf\xC3\xA9").has_value());
  CHECK(find_invalid_utf8("ab\xFF") == 2u);
  CHECK(find_invalid_utf8("\xE2\x82") == 0u);
  CHECK(find_invalid_utf8("\xED\xA0\x80") == 0u);  // surrogate
}
