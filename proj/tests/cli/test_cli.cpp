#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <string>

#include "odpx/ntriples_writer.hpp"
#include "odpx/pipeline.hpp"

namespace fs = std::filesystem;
using odpx::read_file;
using odpx::write_file;

namespace {

const fs::path kData = ODPX_DATA_DIR;
const fs::path kWork = ODPX_WORK_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

/// Runs the CLI inside `cwd` with the given arguments.
Run odpx_cli(const fs::path& cwd, const std::vector<std::string>& args) {
  fs::create_directories(cwd);
  const fs::path out = cwd / ".stdout";
  const fs::path err = cwd / ".stderr";
  std::string cmd = "cd " + quote(cwd.string()) + " && " + quote(ODPX_CLI);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " >" + quote(out.string()) + " 2>" + quote(err.string());
  const int status = std::system(cmd.c_str());
  Run r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, read_file(out), read_file(err)};
  fs::remove(out);
  fs::remove(err);
  return r;
}

fs::path fresh(const std::string& name) {
  const fs::path p = kWork / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string fixture(const std::string& name) { return (kData / "fixtures" / name).string(); }
const std::string kRequirements = (kData / "requirements.json").string();

}  // namespace

TEST_CASE("usage errors exit 2") {
  const auto dir = fresh("usage");
  CHECK(odpx_cli(dir, {}).code == 2);
  CHECK(odpx_cli(dir, {"frobnicate"}).code == 2);
  CHECK(odpx_cli(dir, {"ingest"}).code == 2);
  CHECK(odpx_cli(dir, {"ingest", "-i", fixture("toy.ttl"), "--bogus"}).code == 2);
  CHECK(odpx_cli(dir, {"extract", "--method", "mex", "--seeds", "x"}).code == 2);
  CHECK(odpx_cli(dir, {"--help"}).code == 0);
  const auto version = odpx_cli(dir, {"--version"});
  CHECK(version.code == 0);
  CHECK(version.out.find("0.1.0") != std::string::npos);
  const auto extract = odpx_cli(dir, {"extract", "-i", fixture("toy.ttl")});
  CHECK(extract.code == 2);
  CHECK(extract.err.find("configuration error") != std::string::npos);
}

TEST_CASE("runtime failures exit 1 with a distinct message") {
  const auto dir = fresh("failures");
  const auto missing = odpx_cli(dir, {"ingest", "-i", "nope.ttl"});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("odpx: error: cannot read") != std::string::npos);

  write_file(dir / "bad.ttl", "@prefix : <http://x.org/> .\n:a :b .\n");
  const auto parse = odpx_cli(dir, {"ingest", "-i", "bad.ttl"});
  CHECK(parse.code == 1);
  CHECK(parse.err.find("odpx: parse error: ") != std::string::npos);
  CHECK(parse.err.find("bad.ttl") != std::string::npos);

  write_file(dir / "bad.csv", "requirement_id,score\n");
  const auto format = odpx_cli(
      dir, {"extract", "-i", fixture("toy.ttl"), "--from-matches", "bad.csv", "--requirement", "req1"});
  CHECK(format.code == 1);
  CHECK(format.err.find("odpx: format error: ") != std::string::npos);

  write_file(dir / "seeds.txt", "http://example.org/elsewhere#X\n");
  const auto unknown = odpx_cli(dir, {"extract", "-i", fixture("toy.ttl"), "--seeds", "seeds.txt"});
  CHECK(unknown.code == 1);
  CHECK(unknown.err.find("odpx: error: ") != std::string::npos);
}

TEST_CASE("ingest writes canonical N-Triples") {
  const auto dir = fresh("ingest");
  REQUIRE(odpx_cli(dir, {"ingest", "-i", fixture("toy.ttl")}).code == 0);
  const auto expected = odpx::serialize_ntriples(odpx::load_ontology({fixture("toy.ttl")}));
  CHECK(read_file(dir / "canonical.nt") == expected);
  const auto to_stdout = odpx_cli(dir, {"ingest", "-i", fixture("toy.nt"), "-o", "-"});
  CHECK(to_stdout.code == 0);
  CHECK(to_stdout.out == expected);
  const auto merged = odpx_cli(dir, {"ingest", "-i", fixture("toy.ttl"), "-i", fixture("bare.ttl"), "-o", "-"});
  CHECK(merged.code == 0);
  CHECK(merged.out == odpx::serialize_ntriples(odpx::load_ontology({fixture("toy.ttl"), fixture("bare.ttl")})));
}

TEST_CASE("standalone stages reproduce the pipeline artifacts") {
  const auto run_dir = fresh("stages-pipeline");
  auto config = odpx::load_pipeline_config(kData / "toy_pipeline.json");
  config.output_dir = run_dir;
  REQUIRE(odpx::run_pipeline(config).exit_code == 0);
  const fs::path toy = run_dir / "toy";

  const auto dir = fresh("stages");
  REQUIRE(odpx_cli(dir, {"ingest", "-i", fixture("toy.ttl")}).code == 0);
  REQUIRE(odpx_cli(dir, {"corpus", "--local-name-fallback"}).code == 0);
  REQUIRE(odpx_cli(dir, {"embed", "--requirements", kRequirements}).code == 0);
  REQUIRE(odpx_cli(dir, {"match", "--requirements", kRequirements, "-k", "5"}).code == 0);
  REQUIRE(odpx_cli(dir, {"extract", "--from-matches", "matches.csv", "--requirement", "req1", "--name", "toy"})
              .code == 0);
  for (const char* f : {"canonical.nt", "corpus.tsv", "embeddings.tsv", "matches.csv", "modules/req1.ttl"}) {
    CAPTURE(f);
    CHECK(read_file(dir / f) == read_file(toy / f));
  }

  const auto report = odpx_cli(dir, {"evaluate", "--requirements", kRequirements, "--ground-truth",
                                     fixture("toy_ground_truth.csv"), "--matches", "toy=" + (toy / "matches.csv").string(),
                                     "--matches", "bare=" + (run_dir / "bare" / "matches.csv").string(), "-o", "-",
                                     "--csv", "report.csv"});
  CHECK(report.code == 0);
  CHECK(report.out == read_file(run_dir / "report.md"));
  CHECK(read_file(dir / "report.csv") == read_file(run_dir / "report.csv"));
}

TEST_CASE("evaluate on the reference counts matches the golden report") {
  const auto dir = fresh("evaluate");
  const auto r = odpx_cli(dir, {"evaluate", "--counts", fixture("reference_counts.csv"), "-o", "-"});
  CHECK(r.code == 0);
  CHECK(r.out == read_file(kData / "golden" / "reference_report.md"));
  CHECK(odpx_cli(dir, {"evaluate", "--counts", "x.csv", "--matches", "a=b.csv"}).code == 2);
}

TEST_CASE("extract from a seed file") {
  const auto dir = fresh("extract");
  write_file(dir / "seeds.txt",
             "# chain collapse\n<http://example.org/toy#HeatTreatment>  # step\nhttp://example.org/toy#Parameter\n\n");
  REQUIRE(odpx_cli(dir, {"extract", "-i", fixture("toy.ttl"), "--seeds", "seeds.txt", "--method", "subset"}).code ==
          0);
  CHECK(read_file(dir / "module.ttl") == read_file(kData / "golden" / "toy_subset_heat_parameter.ttl"));
  const auto bare = odpx_cli(dir, {"extract", "-i", fixture("toy.ttl"), "--seeds", "seeds.txt", "--method",
                                   "subset", "--no-annotations", "-o", "-"});
  CHECK(bare.code == 0);
  CHECK(bare.out.find("rdfs:label") == std::string::npos);
}

TEST_CASE("pipeline dry run, empty config and failure isolation") {
  const auto dir = fresh("pipeline");
  const std::string reqs = nlohmann::json(kRequirements).dump();
  write_file(dir / "dry.json", "{\"ontologies\": [{\"name\": \"toy\", \"file\": " +
                                   nlohmann::json(fixture("toy.ttl")).dump() + "}], \"requirements\": " + reqs +
                                   ", \"output_dir\": \"out-dry\"}");
  const auto dry = odpx_cli(dir, {"pipeline", "-c", "dry.json", "--dry-run"});
  CHECK(dry.code == 0);
  CHECK(dry.out == "configuration ok: 1 ontologies\n");
  CHECK_FALSE(fs::exists(dir / "out-dry"));

  write_file(dir / "empty.json", "{\"ontologies\": [], \"requirements\": " + reqs + ", \"output_dir\": \"out-empty\"}");
  CHECK(odpx_cli(dir, {"pipeline", "-c", "empty.json"}).code == 0);
  const auto header_only = read_file(dir / "out-empty" / "report.md");
  CHECK(header_only.rfind("| Ontology |", 0) == 0);
  CHECK(std::count(header_only.begin(), header_only.end(), '\n') == 2);

  write_file(dir / "unknown.json", "{\"ontology\": [], \"requirements\": " + reqs + ", \"output_dir\": \"o\"}");
  const auto unknown = odpx_cli(dir, {"pipeline", "-c", "unknown.json"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("unknown key 'ontology'") != std::string::npos);

  write_file(dir / "partial.json", "{\"ontologies\": [{\"name\": \"toy\", \"file\": " +
                                       nlohmann::json(fixture("toy.ttl")).dump() +
                                       "}, {\"name\": \"ghost\", \"file\": \"missing.ttl\"}], \"requirements\": " +
                                       reqs + ", \"output_dir\": \"out-partial\"}");
  const auto partial = odpx_cli(dir, {"pipeline", "-c", "partial.json"});
  CHECK(partial.code == 1);
  CHECK(partial.err.find("ghost: failed in ingest") != std::string::npos);
  const auto manifest = nlohmann::json::parse(read_file(dir / "out-partial" / "manifest.json"));
  CHECK(manifest["status"] == "partial");
  CHECK(manifest["ontologies"][0]["status"] == "ok");
  CHECK(manifest["ontologies"][1]["status"] == "failed");
  CHECK(manifest["ontologies"][1]["error"].get<std::string>().find("missing.ttl") != std::string::npos);
  CHECK(fs::exists(dir / "out-partial" / "toy" / "modules" / "req1.ttl"));
  CHECK_FALSE(fs::exists(dir / "out-partial" / "ghost" / "canonical.nt"));
}
