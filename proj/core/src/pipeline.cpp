#include "odpx/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "odpx/hash.hpp"
#include "odpx/module_writer.hpp"
#include "odpx/ntriples_writer.hpp"
#include "odpx/version.hpp"

namespace odpx {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return (path.is_absolute() ? path : base / path).lexically_normal();
}

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key) || obj[key].is_null()) return fallback;
  try {
    return obj[key].get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config: '") + key + "' has the wrong type");
  }
}

const json& object_at(const json& doc, const char* key) {
  static const json empty = json::object();
  if (!doc.contains(key)) return empty;
  if (!doc[key].is_object()) throw ConfigError(std::string("config: '") + key + "' must be an object");
  return doc[key];
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find_if(known.begin(), known.end(), [&](const char* k) { return key == k; }) == known.end()) {
      throw ConfigError("config: unknown key '" + key + "' in " + where);
    }
  }
}

Iri config_iri(const std::string& text, const std::string& where) {
  auto iri = Iri::try_parse(text);
  if (!iri) throw ConfigError("config: " + where + ": not an absolute IRI: '" + text + "'");
  return *iri;
}

OntologySource parse_source(const json& j, const fs::path& base) {
  if (!j.is_object()) throw ConfigError("config: each ontology must be an object");
  reject_unknown(j, {"name", "file", "files", "format", "seeds"}, "ontology");
  OntologySource src;
  src.name = get_or<std::string>(j, "name", "");
  if (src.name.empty()) throw ConfigError("config: ontology without a name");
  const std::string where = "ontology '" + src.name + "'";
  if (j.contains("file")) src.files.push_back(resolve(base, get_or<std::string>(j, "file", "")));
  for (const auto& f : get_or<std::vector<std::string>>(j, "files", {})) src.files.push_back(resolve(base, f));
  if (src.files.empty()) throw ConfigError("config: " + where + " lists no files");
  if (j.contains("format") && !j["format"].is_null()) {
    const auto name = get_or<std::string>(j, "format", "");
    src.format = syntax_from_name(name);
    if (!src.format) throw ConfigError("config: " + where + ": unknown format '" + name + "'");
  }
  if (j.contains("seeds")) {
    const auto seeds = get_or<std::map<std::string, std::vector<std::string>>>(j, "seeds", {});
    for (const auto& [req, iris] : seeds) {
      auto& out = src.seeds[req];
      for (const auto& s : iris) out.push_back(config_iri(s, where + " seeds"));
    }
  }
  return src;
}

CorpusConfig parse_corpus(const json& j) {
  reject_unknown(j, {"language", "local_name_fallback", "annotation_properties"}, "corpus");
  CorpusConfig c;
  if (j.contains("language")) {
    c.language_filter = j["language"].is_null() ? std::nullopt
                                                : std::optional(get_or<std::string>(j, "language", "en"));
  }
  c.include_local_name_fallback = get_or<bool>(j, "local_name_fallback", false);
  if (j.contains("annotation_properties")) {
    c.annotation_properties.clear();
    for (const auto& p : get_or<std::vector<std::string>>(j, "annotation_properties", {})) {
      c.annotation_properties.push_back(config_iri(p, "corpus.annotation_properties"));
    }
  }
  return c;
}

ProviderConfig parse_provider(const json& j, const fs::path& base) {
  reject_unknown(j, {"kind", "dimension", "endpoint", "model", "auth_token_env", "timeout_ms",
                     "max_batch_size", "max_in_flight", "cache"},
                 "provider");
  ProviderConfig p;
  const auto kind = get_or<std::string>(j, "kind", "local-hash");
  const auto k = provider_kind_from_name(kind);
  if (!k) throw ConfigError("config: unknown provider kind '" + kind + "'");
  p.kind = *k;
  p.dimension = get_or<std::size_t>(j, "dimension", p.dimension);
  p.endpoint = get_or<std::string>(j, "endpoint", p.endpoint);
  p.model = get_or<std::string>(j, "model", p.model);
  p.auth_token_env = get_or<std::string>(j, "auth_token_env", p.auth_token_env);
  p.timeout = std::chrono::milliseconds(get_or<long long>(j, "timeout_ms", p.timeout.count()));
  p.max_batch_size = get_or<std::size_t>(j, "max_batch_size", p.max_batch_size);
  p.max_in_flight = get_or<std::size_t>(j, "max_in_flight", p.max_in_flight);
  if (j.contains("cache") && !j["cache"].is_null()) p.cache_path = resolve(base, get_or<std::string>(j, "cache", ""));
  return p;
}

MatcherConfig parse_matcher(const json& j) {
  reject_unknown(j, {"theta", "k", "aggregation"}, "matcher");
  MatcherConfig m;
  m.theta = get_or<double>(j, "theta", m.theta);
  m.k = get_or<std::size_t>(j, "k", m.k);
  const auto agg = get_or<std::string>(j, "aggregation", std::string(to_string(m.aggregation)));
  const auto a = aggregation_from_name(agg);
  if (!a) throw ConfigError("config: unknown aggregation '" + agg + "'");
  m.aggregation = *a;
  return m;
}

ExtractionDefaults parse_extraction(const json& j) {
  reject_unknown(j, {"method", "intermediates", "include_annotations"}, "extraction");
  ExtractionDefaults e;
  const auto method = get_or<std::string>(j, "method", "star");
  const auto m = extraction_method_from_name(method);
  if (!m) throw ConfigError("config: unknown extraction method '" + method + "'");
  e.method = *m;
  const auto inter = get_or<std::string>(j, "intermediates", "none");
  const auto i = intermediates_from_name(inter);
  if (!i) throw ConfigError("config: unknown intermediates mode '" + inter + "'");
  e.intermediates = *i;
  e.include_annotations = get_or<bool>(j, "include_annotations", true);
  return e;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

std::string relative_key(const fs::path& path, const fs::path& root) {
  return path.lexically_relative(root).generic_string();
}

struct Shared {
  const PipelineConfig& config;
  const std::vector<Requirement>& requirements;
  const GroundTruth& truth;
  EmbeddingProvider& provider;
  std::mutex provider_mutex;
  std::mutex outputs_mutex;
  std::map<std::string, std::string> outputs;

  void write(const fs::path& path, const std::string& content) {
    write_file(path, content);
    std::lock_guard lock(outputs_mutex);
    outputs[relative_key(path, config.output_dir)] = sha256_hex(content);
  }
};

OntologyOutcome process(const OntologySource& source, Shared& shared) {
  OntologyOutcome outcome;
  outcome.name = source.name;
  const fs::path dir = shared.config.output_dir / source.name;
  std::string stage;
  auto timed = [&](const std::string& name, auto&& fn) {
    stage = name;
    const auto start = std::chrono::steady_clock::now();
    fn();
    outcome.timings.push_back({name, elapsed_ms(start)});
  };
  try {
    OntologyGraph graph;
    timed("ingest", [&] {
      graph = load_ontology(source.files, source.format);
      shared.write(dir / "canonical.nt", serialize_ntriples(graph));
      for (auto& w : axiom_views(graph).warnings) outcome.warnings.push_back(std::move(w));
    });

    std::vector<ConceptDocument> corpus;
    timed("corpus", [&] {
      corpus = build_corpus(graph, shared.config.corpus);
      shared.write(dir / "corpus.tsv", write_corpus_tsv(corpus));
    });

    const auto aggregation = shared.config.matcher.aggregation;
    EmbeddingTable table;
    timed("embed", [&] {
      std::lock_guard lock(shared.provider_mutex);
      table = embed_inputs(shared.requirements, corpus, shared.provider, aggregation);
      shared.write(dir / "embeddings.tsv", write_embedding_table(table));
    });

    std::vector<RetrievedSet> retrieved;
    timed("match", [&] {
      const auto matrix = similarity_matrix(shared.requirements, corpus, table, aggregation);
      retrieved = retrieve(matrix, shared.config.matcher);
      shared.write(dir / "matches.csv", write_matches_csv(retrieved));
    });

    timed("evaluate", [&] {
      outcome.rows = evaluate_ontology(source.name, retrieved, shared.requirements, shared.truth);
    });

    timed("extract", [&] {
      std::error_code ec;
      fs::remove_all(dir / "modules", ec);
      for (const RetrievedSet& set : retrieved) {
        const auto* entry = shared.truth.find(source.name, set.requirement_id);
        if (entry != nullptr && entry->not_applicable) continue;
        ModuleRequest request;
        request.seeds = extraction_seeds(source, set);
        request.method = shared.config.extraction.method;
        request.intermediates = shared.config.extraction.intermediates;
        request.include_annotations = shared.config.extraction.include_annotations;
        if (request.seeds.empty()) {
          outcome.warnings.push_back(set.requirement_id + ": no seeds, module skipped");
          continue;
        }
        const OntologyModule module = extract_module(graph, request, source.name);
        for (const Iri& u : module.unknown_seeds) {
          outcome.warnings.push_back(set.requirement_id + ": unknown seed " + u.str());
        }
        shared.write(dir / "modules" / (set.requirement_id + ".ttl"), emit_module(module));
      }
    });
  } catch (const std::exception& e) {
    outcome.ok = false;
    outcome.failed_stage = stage;
    outcome.error = e.what();
    outcome.rows.clear();
  }
  return outcome;
}

std::string manifest_json(const PipelineConfig& config, const PipelineResult& result,
                          double total_ms) {
  json doc;
  doc["tool"] = "odpx";
  doc["version"] = kVersion;
  doc["config_sha256"] = config.config_hash;
  doc["status"] = result.exit_code == 0 ? "ok" : "partial";
  json onts = json::array();
  for (const auto& o : result.ontologies) {
    json j;
    j["name"] = o.name;
    j["status"] = o.ok ? "ok" : "failed";
    if (!o.ok) {
      j["failed_stage"] = o.failed_stage;
      j["error"] = o.error;
    }
    json t = json::object();
    for (const auto& s : o.timings) t[s.stage] = s.milliseconds;
    j["timings_ms"] = t;
    j["warnings"] = o.warnings;
    onts.push_back(std::move(j));
  }
  doc["ontologies"] = std::move(onts);
  json outs = json::array();
  for (const auto& [path, hash] : result.outputs) outs.push_back({{"path", path}, {"sha256", hash}});
  doc["outputs"] = std::move(outs);
  doc["total_ms"] = total_ms;
  return doc.dump(2) + "\n";
}

struct Inputs {
  std::vector<Requirement> requirements;
  GroundTruth truth;
};

Inputs load_inputs(const PipelineConfig& config) {
  Inputs in;
  try {
    in.requirements = load_requirements(read_file(config.requirements));
    std::set<std::string> ids;
    for (const auto& r : in.requirements) ids.insert(r.id);
    if (config.ground_truth) in.truth = load_ground_truth(read_file(*config.ground_truth), &ids);
    for (const auto& o : config.ontologies) {
      for (const auto& [req, _] : o.seeds) {
        if (!ids.contains(req)) {
          throw ConfigError("ontology '" + o.name + "' has seeds for unknown requirement '" + req + "'");
        }
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return in;
}

}  // namespace

void PipelineConfig::validate() const {
  std::set<std::string> names;
  const fs::path out = output_dir.lexically_normal();
  if (out.empty()) throw ConfigError("config: output_dir is required");
  if (requirements.empty()) throw ConfigError("config: requirements is required");
  auto check_path = [&](const fs::path& p, const std::string& what) {
    if (p.lexically_normal() == out) {
      throw ConfigError("config: " + what + " coincides with the output directory");
    }
  };
  check_path(requirements, "requirements");
  if (ground_truth) check_path(*ground_truth, "ground_truth");
  for (const auto& o : ontologies) {
    if (!names.insert(o.name).second) throw ConfigError("config: duplicate ontology name '" + o.name + "'");
    if (o.name == "." || o.name == ".." || o.name.find_first_of("/\\") != std::string::npos) {
      throw ConfigError("config: ontology name '" + o.name + "' is not a plain directory name");
    }
    for (const auto& f : o.files) check_path(f, "ontology '" + o.name + "' file");
  }
  if (workers == 0) throw ConfigError("config: workers must be at least 1");
  corpus.validate();
  provider.validate();
  matcher.validate();
}

PipelineConfig parse_pipeline_config(std::string_view json_text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  static const std::set<std::string> known = {"ontologies", "requirements", "ground_truth",
                                              "corpus",     "provider",     "matcher",
                                              "extraction", "output_dir",   "workers"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.contains(key)) throw ConfigError("config: unknown key '" + key + "'");
  }
  PipelineConfig c;
  if (doc.contains("ontologies")) {
    if (!doc["ontologies"].is_array()) throw ConfigError("config: 'ontologies' must be a list");
    for (const auto& o : doc["ontologies"]) c.ontologies.push_back(parse_source(o, base_dir));
  }
  if (doc.contains("requirements")) c.requirements = resolve(base_dir, get_or<std::string>(doc, "requirements", ""));
  if (doc.contains("ground_truth") && !doc["ground_truth"].is_null()) {
    c.ground_truth = resolve(base_dir, get_or<std::string>(doc, "ground_truth", ""));
  }
  c.corpus = parse_corpus(object_at(doc, "corpus"));
  c.provider = parse_provider(object_at(doc, "provider"), base_dir);
  c.matcher = parse_matcher(object_at(doc, "matcher"));
  c.extraction = parse_extraction(object_at(doc, "extraction"));
  if (doc.contains("output_dir")) c.output_dir = resolve(base_dir, get_or<std::string>(doc, "output_dir", ""));
  c.workers = get_or<std::size_t>(doc, "workers", 1);
  c.config_hash = sha256_hex(json_text);
  c.validate();
  return c;
}

PipelineConfig load_pipeline_config(const fs::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
  return parse_pipeline_config(text, base);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in || fs::is_directory(path)) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error("cannot read " + path.string());
  return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

OntologyGraph load_ontology(const std::vector<fs::path>& files, std::optional<Syntax> format) {
  GraphBuilder builder;
  for (const fs::path& f : files) {
    const std::string bytes = read_file(f);
    const Syntax syntax = format.value_or(syntax_from_path(f.string()));
    const auto base = Iri::try_parse("file://" + fs::absolute(f).lexically_normal().generic_string());
    try {
      parse_into(builder, bytes, syntax, base);
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), e.line(), e.column(), f.filename().string() + ": " + e.what());
    }
  }
  return std::move(builder).build();
}

std::vector<EvalRow> evaluate_ontology(const std::string& ontology,
                                       std::span<const RetrievedSet> retrieved,
                                       std::span<const Requirement> requirements,
                                       const GroundTruth& truth) {
  std::vector<EvalRow> rows;
  for (const Requirement& r : requirements) {
    const auto* entry = truth.find(ontology, r.id);
    if (entry == nullptr) continue;
    if (entry->not_applicable) {
      rows.push_back(not_applicable_row(ontology, r.id));
      continue;
    }
    const auto it = std::find_if(retrieved.begin(), retrieved.end(),
                                 [&](const RetrievedSet& s) { return s.requirement_id == r.id; });
    EvalRow row = it == retrieved.end() ? score(std::span<const Iri>{}, entry->iris)
                                        : score(*it, entry->iris);
    row.ontology = ontology;
    row.requirement_id = r.id;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::set<Iri> extraction_seeds(const OntologySource& source, const RetrievedSet& retrieved) {
  const auto curated = source.seeds.find(retrieved.requirement_id);
  if (curated != source.seeds.end()) return {curated->second.begin(), curated->second.end()};
  std::set<Iri> seeds;
  for (const auto& s : retrieved.ranked) seeds.insert(s.iri);
  return seeds;
}

void dry_run_pipeline(const PipelineConfig& config) {
  config.validate();
  (void)load_inputs(config);
  for (const auto& o : config.ontologies) {
    for (const auto& f : o.files) {
      if (!fs::is_regular_file(f)) {
        throw ConfigError("ontology '" + o.name + "': cannot read " + f.string());
      }
    }
  }
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();
  const Inputs inputs = load_inputs(config);
  const auto provider = make_provider(config.provider);

  Shared shared{config, inputs.requirements, inputs.truth, *provider, {}, {}, {}};
  PipelineResult result;
  result.ontologies.resize(config.ontologies.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < config.ontologies.size(); i = next++) {
      result.ontologies[i] = process(config.ontologies[i], shared);
    }
  };
  const std::size_t n = std::min(config.workers, std::max<std::size_t>(config.ontologies.size(), 1));
  std::vector<std::thread> threads;
  for (std::size_t i = 1; i < n; ++i) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  std::vector<EvalRow> rows;
  for (const auto& o : result.ontologies) {
    if (!o.ok) result.exit_code = 1;
    rows.insert(rows.end(), o.rows.begin(), o.rows.end());
  }
  const auto columns = report_columns(inputs.requirements);
  shared.write(config.output_dir / "report.md", render_report(rows, ReportFormat::markdown, columns));
  shared.write(config.output_dir / "report.csv", render_report(rows, ReportFormat::csv, columns));
  result.outputs = shared.outputs;
  write_file(config.output_dir / "manifest.json", manifest_json(config, result, elapsed_ms(start)));
  return result;
}

}  // namespace odpx
