#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odpx/corpus.hpp"
#include "odpx/embedding.hpp"
#include "odpx/eval.hpp"
#include "odpx/extract.hpp"
#include "odpx/graph.hpp"
#include "odpx/matcher.hpp"
#include "odpx/rdf_parser.hpp"
#include "odpx/requirements.hpp"

namespace odpx {

struct OntologySource {
  std::string name;
  std::vector<std::filesystem::path> files;
  /// Guessed per file from its extension when unset.
  std::optional<Syntax> format;
  /// Curated seeds per requirement id; used instead of retrieved IRIs.
  std::map<std::string, std::vector<Iri>> seeds;
};

struct ExtractionDefaults {
  ExtractionMethod method = ExtractionMethod::star;
  Intermediates intermediates = Intermediates::none;
  bool include_annotations = true;
};

struct PipelineConfig {
  std::vector<OntologySource> ontologies;
  std::filesystem::path requirements;
  /// Optional; without it every pair counts as applicable and nothing is scored.
  std::optional<std::filesystem::path> ground_truth;
  CorpusConfig corpus;
  ProviderConfig provider;
  MatcherConfig matcher;
  ExtractionDefaults extraction;
  std::filesystem::path output_dir;
  std::size_t workers = 1;
  /// SHA-256 of the configuration text it was loaded from.
  std::string config_hash;

  /// Throws ConfigError on duplicate names, paths that coincide with the
  /// output directory, or any invalid sub-config.
  void validate() const;
};

/// Parses the JSON configuration (comments allowed). Relative paths resolve
/// against `base_dir`. Throws ConfigError.
PipelineConfig parse_pipeline_config(std::string_view json_text,
                                     const std::filesystem::path& base_dir);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

/// Whole file as bytes; throws Error when unreadable.
std::string read_file(const std::filesystem::path& path);
/// Creates parent directories and replaces `path` via a temporary file.
void write_file(const std::filesystem::path& path, std::string_view content);

/// Parses and merges every file (blank nodes stay document-scoped).
OntologyGraph load_ontology(const std::vector<std::filesystem::path>& files,
                            std::optional<Syntax> format = std::nullopt);

struct StageTiming {
  std::string stage;
  double milliseconds = 0.0;
};

struct OntologyOutcome {
  std::string name;
  bool ok = true;
  std::string failed_stage;
  std::string error;
  std::vector<StageTiming> timings;
  std::vector<std::string> warnings;
  std::vector<EvalRow> rows;
};

struct PipelineResult {
  /// 0 success, 1 when any ontology failed.
  int exit_code = 0;
  std::vector<OntologyOutcome> ontologies;
  /// Output paths relative to output_dir ('/'-separated) with their SHA-256.
  std::map<std::string, std::string> outputs;
};

/// Runs every stage for every ontology (up to `workers` at once) and writes
///   <out>/<name>/{canonical.nt, corpus.tsv, embeddings.tsv, matches.csv, modules/<req>.ttl}
///   <out>/report.md, <out>/report.csv, <out>/manifest.json
/// A failing ontology is recorded and the others continue. Requirement or
/// ground-truth problems throw ConfigError before anything is written.
PipelineResult run_pipeline(const PipelineConfig& config);

/// Checks that every input exists and parses at the config level; writes nothing.
void dry_run_pipeline(const PipelineConfig& config);

/// Scored and not-applicable rows for one ontology's retrieved sets.
std::vector<EvalRow> evaluate_ontology(const std::string& ontology,
                                       std::span<const RetrievedSet> retrieved,
                                       std::span<const Requirement> requirements,
                                       const GroundTruth& truth);

/// Seeds for one requirement: curated ones when present, else retrieved IRIs.
std::set<Iri> extraction_seeds(const OntologySource& source, const RetrievedSet& retrieved);

}  // namespace odpx
