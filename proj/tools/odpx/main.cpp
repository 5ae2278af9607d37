// odpx: ontology design pattern extraction from requirement texts.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "odpx/corpus.hpp"
#include "odpx/csv.hpp"
#include "odpx/embedding.hpp"
#include "odpx/eval.hpp"
#include "odpx/extract.hpp"
#include "odpx/matcher.hpp"
#include "odpx/module_writer.hpp"
#include "odpx/ntriples_writer.hpp"
#include "odpx/pipeline.hpp"
#include "odpx/rdf_parser.hpp"
#include "odpx/requirements.hpp"
#include "odpx/version.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct InputOptions {
  std::vector<std::string> files;
  std::string format;
};

void add_inputs(CLI::App* cmd, InputOptions& in, const std::string& default_file) {
  auto* opt = cmd->add_option("-i,--input", in.files, "Ontology file(s)");
  if (default_file.empty()) {
    opt->required();
  } else {
    in.files = {default_file};
    opt->capture_default_str();
  }
  cmd->add_option("--format", in.format, "turtle or ntriples (default: from extension)")
      ->check(CLI::IsMember({"turtle", "ttl", "ntriples", "nt"}));
}

odpx::OntologyGraph load(const InputOptions& in) {
  std::vector<fs::path> paths(in.files.begin(), in.files.end());
  std::optional<odpx::Syntax> syntax;
  if (!in.format.empty()) syntax = odpx::syntax_from_name(in.format);
  return odpx::load_ontology(paths, syntax);
}

struct ProviderOptions {
  std::string kind = "local-hash";
  std::size_t dimension = 512;
  std::string endpoint;
  std::string model = odpx::ProviderConfig{}.model;
  std::string token_env = odpx::ProviderConfig{}.auth_token_env;
  long long timeout_ms = 30000;
  std::size_t batch = 64;
  std::size_t in_flight = 4;
  std::string cache;

  odpx::ProviderConfig config() const {
    odpx::ProviderConfig c;
    c.kind = *odpx::provider_kind_from_name(kind);
    c.dimension = dimension;
    c.endpoint = endpoint;
    c.model = model;
    c.auth_token_env = token_env;
    c.timeout = std::chrono::milliseconds(timeout_ms);
    c.max_batch_size = batch;
    c.max_in_flight = in_flight;
    if (!cache.empty()) c.cache_path = cache;
    c.validate();
    return c;
  }
};

void add_provider(CLI::App* cmd, ProviderOptions& p) {
  cmd->add_option("--provider", p.kind, "local-hash or remote-http")
      ->check(CLI::IsMember({"local-hash", "remote-http"}))
      ->capture_default_str();
  cmd->add_option("--dimension", p.dimension, "Local provider dimension")->capture_default_str();
  cmd->add_option("--endpoint", p.endpoint, "Remote embeddings URL");
  cmd->add_option("--model", p.model, "Remote model name")->capture_default_str();
  cmd->add_option("--token-env", p.token_env, "Variable holding the bearer token")->capture_default_str();
  cmd->add_option("--timeout-ms", p.timeout_ms, "Remote request timeout")->capture_default_str();
  cmd->add_option("--batch-size", p.batch, "Texts per remote request")->capture_default_str();
  cmd->add_option("--in-flight", p.in_flight, "Concurrent remote requests")->capture_default_str();
  cmd->add_option("--cache", p.cache, "Vector cache file");
}

void add_aggregation(CLI::App* cmd, std::string& aggregation) {
  cmd->add_option("--aggregation", aggregation, "max, mean or joined")
      ->check(CLI::IsMember({"max", "mean", "joined"}))
      ->capture_default_str();
}

std::vector<odpx::Requirement> requirements_from(const std::string& path) {
  return odpx::load_requirements(odpx::read_file(path));
}

std::vector<odpx::ConceptDocument> corpus_from(const std::string& path) {
  return odpx::read_corpus_tsv(odpx::read_file(path));
}

std::set<odpx::Iri> read_seeds_file(const std::string& path) {
  std::set<odpx::Iri> seeds;
  std::istringstream in(odpx::read_file(path));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    // '#' opens a comment only at the start or after whitespace; IRIs keep their fragments.
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
        line.erase(i);
        break;
      }
    }
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    std::string text = line.substr(b, e - b + 1);
    if (text.size() >= 2 && text.front() == '<' && text.back() == '>') text = text.substr(1, text.size() - 2);
    auto iri = odpx::Iri::try_parse(text);
    if (!iri) throw odpx::FormatError(path + " line " + std::to_string(n) + ": not an absolute IRI");
    seeds.insert(*iri);
  }
  return seeds;
}

std::vector<odpx::EvalRow> rows_from_counts(const std::string& path) {
  const auto records = odpx::parse_csv(odpx::read_file(path));
  const std::vector<std::string> header = {"ontology", "requirement_id", "hits", "ext", "gt"};
  if (records.empty() || records.front().fields != header) {
    throw odpx::FormatError(path + ": header must be ontology,requirement_id,hits,ext,gt");
  }
  std::vector<odpx::EvalRow> rows;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i].fields;
    const std::string where = path + " line " + std::to_string(records[i].line);
    if (f.size() != 5) throw odpx::FormatError(where + ": expected 5 fields");
    if (f[2] == "N/A") {
      rows.push_back(odpx::not_applicable_row(f[0], f[1]));
      continue;
    }
    std::size_t v[3];
    for (int k = 0; k < 3; ++k) {
      try {
        std::size_t used = 0;
        const auto x = std::stoull(f[2 + k], &used);
        if (used != f[2 + k].size()) throw std::invalid_argument("trailing");
        v[k] = x;
      } catch (const std::exception&) {
        throw odpx::FormatError(where + ": counts must be non-negative integers");
      }
    }
    auto row = odpx::score_counts(v[0], v[1], v[2]);
    row.ontology = f[0];
    row.requirement_id = f[1];
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
  } else {
    odpx::write_file(path, content);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extract ontology design patterns from requirement texts"};
  app.set_version_flag("--version", std::string(odpx::kVersion));
  app.require_subcommand(1);

  // ingest
  InputOptions ingest_in;
  std::string ingest_out = "canonical.nt";
  auto* ingest = app.add_subcommand("ingest", "Parse ontology files and write canonical N-Triples");
  add_inputs(ingest, ingest_in, "");
  ingest->add_option("-o,--output", ingest_out, "Output file, '-' for stdout")->capture_default_str();

  // corpus
  InputOptions corpus_in;
  std::string corpus_out = "corpus.tsv";
  std::string corpus_language = "en";
  bool corpus_fallback = false;
  std::vector<std::string> corpus_props;
  auto* corpus = app.add_subcommand("corpus", "Harvest annotation text per concept");
  add_inputs(corpus, corpus_in, "canonical.nt");
  corpus->add_option("-o,--output", corpus_out, "Output TSV")->capture_default_str();
  corpus->add_option("--language", corpus_language, "Preferred language tag, or 'any'")->capture_default_str();
  corpus->add_flag("--local-name-fallback", corpus_fallback, "Use split local names for unannotated subjects");
  corpus->add_option("--annotation-property", corpus_props, "Harvested property (repeatable, ordered)");

  // embed
  std::string embed_corpus = "corpus.tsv";
  std::string embed_reqs;
  std::string embed_out = "embeddings.tsv";
  std::string embed_agg = "max";
  ProviderOptions embed_provider;
  auto* embed = app.add_subcommand("embed", "Embed requirement sentences and corpus texts");
  embed->add_option("--corpus", embed_corpus, "Corpus TSV")->capture_default_str();
  embed->add_option("--requirements", embed_reqs, "Requirements JSON")->required();
  embed->add_option("-o,--output", embed_out, "Output table")->capture_default_str();
  add_aggregation(embed, embed_agg);
  add_provider(embed, embed_provider);

  // match
  std::string match_corpus = "corpus.tsv";
  std::string match_reqs;
  std::string match_embeddings = "embeddings.tsv";
  std::string match_out = "matches.csv";
  std::string match_agg = "max";
  odpx::MatcherConfig match_config;
  auto* match = app.add_subcommand("match", "Rank concepts per requirement");
  match->add_option("--corpus", match_corpus, "Corpus TSV")->capture_default_str();
  match->add_option("--requirements", match_reqs, "Requirements JSON")->required();
  match->add_option("--embeddings", match_embeddings, "Table written by 'embed'")->capture_default_str();
  match->add_option("-o,--output", match_out, "Output CSV")->capture_default_str();
  match->add_option("--theta", match_config.theta, "Minimum cosine score")->capture_default_str();
  match->add_option("-k,--top-k", match_config.k, "Maximum concepts per requirement")->capture_default_str();
  add_aggregation(match, match_agg);

  // evaluate
  std::string eval_reqs;
  std::string eval_truth;
  std::vector<std::string> eval_matches;
  std::string eval_counts;
  std::string eval_out = "report.md";
  std::string eval_csv;
  auto* evaluate = app.add_subcommand("evaluate", "Score matches against ground truth");
  evaluate->add_option("--requirements", eval_reqs, "Requirements JSON (sets the column groups)");
  evaluate->add_option("--ground-truth", eval_truth, "Ground-truth CSV");
  auto* matches_opt = evaluate->add_option("--matches", eval_matches, "NAME=matches.csv (repeatable)");
  auto* counts_opt = evaluate->add_option("--counts", eval_counts, "CSV of ontology,requirement_id,hits,ext,gt");
  matches_opt->excludes(counts_opt);
  evaluate->add_option("-o,--output", eval_out, "Markdown report")->capture_default_str();
  evaluate->add_option("--csv", eval_csv, "Also write the CSV report here");

  // extract
  InputOptions extract_in;
  std::string extract_seeds;
  std::string extract_matches;
  std::string extract_requirement;
  std::string extract_method = "star";
  std::string extract_intermediates = "none";
  std::string extract_name;
  std::string extract_out;
  bool extract_no_annotations = false;
  auto* extract = app.add_subcommand("extract", "Extract a module from seed IRIs");
  add_inputs(extract, extract_in, "canonical.nt");
  auto* seeds_opt = extract->add_option("--seeds", extract_seeds, "Seed file, one IRI per line");
  auto* from_opt = extract->add_option("--from-matches", extract_matches, "matches.csv to take seeds from");
  auto* req_opt = extract->add_option("--requirement", extract_requirement, "Requirement id within --from-matches");
  seeds_opt->excludes(from_opt);
  from_opt->needs(req_opt);
  req_opt->needs(from_opt);
  extract->add_option("--method", extract_method, "star, bot, top or subset")
      ->check(CLI::IsMember({"star", "bot", "top", "subset"}))
      ->capture_default_str();
  extract->add_option("--intermediates", extract_intermediates, "all, minimal or none")
      ->check(CLI::IsMember({"all", "minimal", "none"}))
      ->capture_default_str();
  extract->add_flag("--no-annotations", extract_no_annotations, "Leave out annotation assertions");
  extract->add_option("--name", extract_name, "Source name in the module IRI (default: input file stem)");
  extract->add_option("-o,--output", extract_out,
                      "Output Turtle (default: modules/<requirement>.ttl or module.ttl)");

  // pipeline
  std::string pipeline_config;
  bool pipeline_dry = false;
  auto* pipeline = app.add_subcommand("pipeline", "Run every stage from one configuration file");
  pipeline->add_option("-c,--config", pipeline_config, "Configuration JSON")->required();
  pipeline->add_flag("--dry-run", pipeline_dry, "Validate the configuration and inputs only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*ingest) {
      write_output(ingest_out, odpx::serialize_ntriples(load(ingest_in)));
    } else if (*corpus) {
      odpx::CorpusConfig config;
      if (corpus_language == "any") {
        config.language_filter.reset();
      } else {
        config.language_filter = corpus_language;
      }
      config.include_local_name_fallback = corpus_fallback;
      if (!corpus_props.empty()) {
        config.annotation_properties.clear();
        for (const auto& p : corpus_props) config.annotation_properties.push_back(odpx::Iri::parse(p));
      }
      write_output(corpus_out, odpx::write_corpus_tsv(odpx::build_corpus(load(corpus_in), config)));
    } else if (*embed) {
      const auto reqs = requirements_from(embed_reqs);
      const auto docs = corpus_from(embed_corpus);
      auto provider = odpx::make_provider(embed_provider.config());
      const auto table =
          odpx::embed_inputs(reqs, docs, *provider, *odpx::aggregation_from_name(embed_agg));
      write_output(embed_out, odpx::write_embedding_table(table));
    } else if (*match) {
      match_config.aggregation = *odpx::aggregation_from_name(match_agg);
      match_config.validate();
      const auto reqs = requirements_from(match_reqs);
      const auto docs = corpus_from(match_corpus);
      const auto table = odpx::read_embedding_table(odpx::read_file(match_embeddings));
      const auto matrix = odpx::similarity_matrix(reqs, docs, table, match_config.aggregation);
      write_output(match_out, odpx::write_matches_csv(odpx::retrieve(matrix, match_config)));
    } else if (*evaluate) {
      std::vector<odpx::Requirement> reqs;
      if (!eval_reqs.empty()) reqs = requirements_from(eval_reqs);
      const auto columns = reqs.empty() ? odpx::default_report_columns() : odpx::report_columns(reqs);
      std::vector<odpx::EvalRow> rows;
      if (!eval_counts.empty()) {
        rows = rows_from_counts(eval_counts);
      } else {
        if (eval_truth.empty() || eval_reqs.empty()) {
          throw odpx::ConfigError("evaluate: --matches needs --ground-truth and --requirements");
        }
        std::set<std::string> ids;
        for (const auto& r : reqs) ids.insert(r.id);
        const auto truth = odpx::load_ground_truth(odpx::read_file(eval_truth), &ids);
        for (const auto& arg : eval_matches) {
          const auto eq = arg.find('=');
          if (eq == std::string::npos || eq == 0) {
            throw odpx::ConfigError("evaluate: --matches expects NAME=PATH, got '" + arg + "'");
          }
          const std::string name = arg.substr(0, eq);
          const auto retrieved = odpx::read_matches_csv(odpx::read_file(arg.substr(eq + 1)));
          const auto part = odpx::evaluate_ontology(name, retrieved, reqs, truth);
          rows.insert(rows.end(), part.begin(), part.end());
        }
      }
      write_output(eval_out, odpx::render_report(rows, odpx::ReportFormat::markdown, columns));
      if (!eval_csv.empty()) {
        write_output(eval_csv, odpx::render_report(rows, odpx::ReportFormat::csv, columns));
      }
    } else if (*extract) {
      if (extract_seeds.empty() && extract_matches.empty()) {
        throw odpx::ConfigError("extract: give --seeds or --from-matches with --requirement");
      }
      const auto graph = load(extract_in);
      odpx::ModuleRequest request;
      request.method = *odpx::extraction_method_from_name(extract_method);
      request.intermediates = *odpx::intermediates_from_name(extract_intermediates);
      request.include_annotations = !extract_no_annotations;
      std::string out = extract_out;
      if (!extract_seeds.empty()) {
        request.seeds = read_seeds_file(extract_seeds);
        if (out.empty()) out = "module.ttl";
      } else {
        const auto retrieved = odpx::read_matches_csv(odpx::read_file(extract_matches));
        const auto it = std::find_if(retrieved.begin(), retrieved.end(), [&](const auto& s) {
          return s.requirement_id == extract_requirement;
        });
        if (it == retrieved.end()) {
          throw odpx::FormatError(extract_matches + " has no rows for requirement '" +
                                  extract_requirement + "'");
        }
        for (const auto& s : it->ranked) request.seeds.insert(s.iri);
        if (out.empty()) out = "modules/" + extract_requirement + ".ttl";
      }
      const std::string name =
          extract_name.empty() ? fs::path(extract_in.files.front()).stem().string() : extract_name;
      const auto module = odpx::extract_module(graph, request, name);
      for (const auto& u : module.unknown_seeds) std::cerr << "warning: unknown seed " << u.str() << "\n";
      write_output(out, odpx::emit_module(module));
    } else if (*pipeline) {
      const auto config = odpx::load_pipeline_config(pipeline_config);
      if (pipeline_dry) {
        odpx::dry_run_pipeline(config);
        std::cout << "configuration ok: " << config.ontologies.size() << " ontologies\n";
        return 0;
      }
      const auto result = odpx::run_pipeline(config);
      for (const auto& o : result.ontologies) {
        if (o.ok) {
          std::cerr << o.name << ": ok\n";
        } else {
          std::cerr << o.name << ": failed in " << o.failed_stage << ": " << o.error << "\n";
        }
      }
      return result.exit_code;
    }
  } catch (const odpx::ConfigError& e) {
    std::cerr << "odpx: configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const odpx::ParseError& e) {
    std::cerr << "odpx: parse error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const odpx::FormatError& e) {
    std::cerr << "odpx: format error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const odpx::EmbeddingError& e) {
    std::cerr << "odpx: embedding error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "odpx: error: " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}
