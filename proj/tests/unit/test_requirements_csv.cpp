#include <doctest.h>

#include "odpx/csv.hpp"
#include "odpx/error.hpp"
#include "odpx/pipeline.hpp"
#include "odpx/requirements.hpp"

using namespace odpx;

TEST_CASE("bundled requirements load") {
  const auto reqs = load_requirements(read_file(std::string(ODPX_DATA_DIR) + "/requirements.json"));
  REQUIRE(reqs.size() == 3);
  CHECK(reqs[0].id == "req1");
  CHECK(reqs[1].pattern == "Resource ODP");
  CHECK(reqs[2].sentences.size() == 2);
}

TEST_CASE("requirement validation") {
  CHECK(load_requirements(R"({"requirements":[{"id":"a","title":"A","sentences":["x"]}]})")[0].pattern ==
        "A");
  CHECK_THROWS_AS(load_requirements("[]"), FormatError);
  CHECK_THROWS_AS(load_requirements("{"), FormatError);
  CHECK_THROWS_AS(load_requirements(R"({"requirements":[{"id":"a","sentences":[]}]})"), FormatError);
  CHECK_THROWS_AS(load_requirements(R"({"requirements":[{"id":"a","sentences":["  "]}]})"), FormatError);
  CHECK_THROWS_AS(load_requirements(R"({"requirements":[{"id":"","sentences":["x"]}]})"), FormatError);
  CHECK_THROWS_AS(
      load_requirements(R"({"requirements":[{"id":"a","sentences":["x"]},{"id":"a","sentences":["y"]}]})"),
      FormatError);
  CHECK_THROWS_AS(load_requirements(R"({"requirements":[{"id":"a","sentences":[3]}]})"), FormatError);
}

TEST_CASE("CSV records") {
  const auto r = parse_csv("a,b\r\n\"x,y\",\"he said \"\"hi\"\"\"\n\n\"multi\nline\",z");
  REQUIRE(r.size() == 3);
  CHECK(r[0].fields == std::vector<std::string>{"a", "b"});
  CHECK(r[1].fields == std::vector<std::string>{"x,y", "he said \"hi\""});
  CHECK(r[1].line == 2);
  CHECK(r[2].line == 4);
  CHECK(r[2].fields == std::vector<std::string>{"multi\nline", "z"});
  CHECK(parse_csv("a,,\n")[0].fields.size() == 3);
  CHECK_THROWS_AS(parse_csv("\"open\n"), FormatError);
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("q\"") == "\"q\"\"\"");
}
