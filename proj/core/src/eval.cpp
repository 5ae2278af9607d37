#include "odpx/eval.hpp"

#include <algorithm>
#include <charconv>

#include "odpx/csv.hpp"
#include "odpx/error.hpp"

namespace odpx {

namespace {

constexpr std::string_view kDash = "\xE2\x80\x93";

std::string full_precision(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace

const GroundTruth::Entry* GroundTruth::find(std::string_view ontology,
                                            std::string_view requirement_id) const {
  const auto it = entries_.find({std::string(ontology), std::string(requirement_id)});
  return it == entries_.end() ? nullptr : &it->second;
}

void GroundTruth::add(const std::string& ontology, const std::string& requirement_id, Iri iri) {
  Entry& e = entries_[{ontology, requirement_id}];
  if (e.not_applicable) {
    throw FormatError("ground truth: (" + ontology + ", " + requirement_id +
                      ") is marked N/A but also lists IRIs");
  }
  e.iris.insert(std::move(iri));
}

void GroundTruth::mark_not_applicable(const std::string& ontology,
                                      const std::string& requirement_id) {
  Entry& e = entries_[{ontology, requirement_id}];
  if (!e.iris.empty()) {
    throw FormatError("ground truth: (" + ontology + ", " + requirement_id +
                      ") lists IRIs but is also marked N/A");
  }
  e.not_applicable = true;
}

GroundTruth load_ground_truth(std::string_view csv_text,
                              const std::set<std::string>* known_requirements) {
  const auto records = parse_csv(csv_text);
  if (records.empty()) throw FormatError("ground truth: missing header");
  const std::vector<std::string> header = {"ontology", "requirement_id", "iri"};
  if (records.front().fields != header) {
    throw FormatError("ground truth: header must be ontology,requirement_id,iri");
  }
  GroundTruth truth;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& rec = records[i];
    const std::string where = "ground truth line " + std::to_string(rec.line);
    if (rec.fields.size() != 3) throw FormatError(where + ": expected 3 fields");
    const auto& [ontology, requirement, value] = std::tie(rec.fields[0], rec.fields[1], rec.fields[2]);
    if (ontology.empty() || requirement.empty()) {
      throw FormatError(where + ": empty ontology or requirement id");
    }
    if (known_requirements && !known_requirements->contains(requirement)) {
      throw FormatError(where + ": unknown requirement '" + requirement + "'");
    }
    if (value == "N/A") {
      try {
        truth.mark_not_applicable(ontology, requirement);
      } catch (const FormatError& e) {
        throw FormatError(where + ": " + e.what());
      }
      continue;
    }
    auto iri = Iri::try_parse(value);
    if (!iri) throw FormatError(where + ": not an absolute IRI: '" + value + "'");
    try {
      truth.add(ontology, requirement, std::move(*iri));
    } catch (const FormatError& e) {
      throw FormatError(where + ": " + e.what());
    }
  }
  return truth;
}

EvalRow score(std::span<const Iri> retrieved, const std::set<Iri>& truth) {
  if (truth.empty()) throw Error("score: ground-truth set is empty");
  const std::set<Iri> unique(retrieved.begin(), retrieved.end());
  EvalRow row;
  row.ext_count = unique.size();
  row.gt_count = truth.size();
  row.hits = static_cast<std::size_t>(std::count_if(
      unique.begin(), unique.end(), [&](const Iri& i) { return truth.contains(i); }));
  const auto h = static_cast<double>(row.hits);
  row.precision = row.ext_count == 0 ? 0.0 : h / static_cast<double>(row.ext_count);
  row.recall = h / static_cast<double>(row.gt_count);
  const double sum = row.precision + row.recall;
  row.f1 = sum == 0.0 ? 0.0 : 2.0 * row.precision * row.recall / sum;
  return row;
}

EvalRow score(const RetrievedSet& retrieved, const std::set<Iri>& truth) {
  std::vector<Iri> iris;
  iris.reserve(retrieved.ranked.size());
  for (const auto& s : retrieved.ranked) iris.push_back(s.iri);
  EvalRow row = score(iris, truth);
  row.requirement_id = retrieved.requirement_id;
  return row;
}

EvalRow score_counts(std::size_t hits, std::size_t ext, std::size_t gt) {
  if (gt == 0) throw Error("score: ground-truth set is empty");
  if (hits > ext || hits > gt) throw Error("score: hits exceed the retrieved or ground-truth count");
  std::vector<Iri> retrieved;
  std::set<Iri> truth;
  const std::string base = "urn:odpx:count:";
  for (std::size_t i = 0; i < ext; ++i) {
    retrieved.push_back(Iri::unchecked(base + (i < hits ? "hit" : "miss") + std::to_string(i)));
  }
  for (std::size_t i = 0; i < gt; ++i) {
    truth.insert(Iri::unchecked(base + (i < hits ? "hit" : "gt") + std::to_string(i)));
  }
  return score(retrieved, truth);
}

EvalRow not_applicable_row(std::string ontology, std::string requirement_id) {
  EvalRow row;
  row.ontology = std::move(ontology);
  row.requirement_id = std::move(requirement_id);
  row.not_applicable = true;
  return row;
}

std::vector<ReportColumn> default_report_columns() {
  return {{"req1", "Process ODP"}, {"req2", "Resource ODP"}, {"req3", "Project ODP"}};
}

std::vector<ReportColumn> report_columns(std::span<const Requirement> requirements) {
  std::vector<ReportColumn> out;
  for (const auto& r : requirements) out.push_back({r.id, r.pattern.empty() ? r.title : r.pattern});
  return out;
}

std::string round_ratio(std::size_t numerator, std::size_t denominator, int decimals) {
  std::size_t scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  std::size_t q = 0;
  if (denominator != 0) {
    const std::size_t scaled = numerator * scale;
    q = scaled / denominator;
    const std::size_t r2 = 2 * (scaled % denominator);
    if (r2 > denominator || (r2 == denominator && q % 2 == 1)) ++q;
  }
  std::string out = std::to_string(q / scale);
  if (decimals > 0) {
    std::string frac = std::to_string(q % scale);
    out += "." + std::string(static_cast<std::size_t>(decimals) - frac.size(), '0') + frac;
  }
  return out;
}

std::string render_report(std::span<const EvalRow> rows, ReportFormat format,
                          std::span<const ReportColumn> columns) {
  static const char* const kMetrics[] = {"P", "R", "F1", "GT", "Ext"};
  std::vector<std::string> ontologies;
  std::map<std::pair<std::string, std::string>, const EvalRow*> cells;
  for (const auto& row : rows) {
    if (std::find(ontologies.begin(), ontologies.end(), row.ontology) == ontologies.end()) {
      ontologies.push_back(row.ontology);
    }
    cells[{row.ontology, row.requirement_id}] = &row;
  }

  const bool md = format == ReportFormat::markdown;
  auto cell_values = [&](const EvalRow* row) {
    std::vector<std::string> v;
    if (row == nullptr || row->not_applicable) {
      v.assign(5, md ? std::string(kDash) : std::string());
    } else if (md) {
      v = {round_ratio(row->hits, row->ext_count), round_ratio(row->hits, row->gt_count),
           round_ratio(2 * row->hits, row->ext_count + row->gt_count),
           std::to_string(row->gt_count), std::to_string(row->ext_count)};
    } else {
      v = {full_precision(row->precision), full_precision(row->recall), full_precision(row->f1),
           std::to_string(row->gt_count), std::to_string(row->ext_count)};
    }
    return v;
  };

  std::vector<std::string> header = {"Ontology"};
  for (const auto& c : columns) {
    for (const char* m : kMetrics) header.push_back(c.heading + " " + m);
  }
  std::vector<std::vector<std::string>> body;
  for (const auto& name : ontologies) {
    std::vector<std::string> line = {name};
    for (const auto& c : columns) {
      const auto it = cells.find({name, c.requirement_id});
      const auto v = cell_values(it == cells.end() ? nullptr : it->second);
      line.insert(line.end(), v.begin(), v.end());
    }
    body.push_back(std::move(line));
  }

  std::string out;
  if (md) {
    auto emit = [&out](const std::vector<std::string>& fields) {
      out += "|";
      for (const auto& f : fields) out += " " + f + " |";
      out += "\n";
    };
    emit(header);
    out += "|";
    for (std::size_t i = 0; i < header.size(); ++i) out += i == 0 ? " --- |" : " ---: |";
    out += "\n";
    for (const auto& line : body) emit(line);
  } else {
    auto emit = [&out](const std::vector<std::string>& fields) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ",";
        out += csv_field(fields[i]);
      }
      out += "\n";
    };
    emit(header);
    for (const auto& line : body) emit(line);
  }
  return out;
}

std::string render_report(std::span<const EvalRow> rows, ReportFormat format) {
  const auto columns = default_report_columns();
  return render_report(rows, format, columns);
}

}  // namespace odpx
