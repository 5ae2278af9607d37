#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "odpx/iri.hpp"
#include "odpx/matcher.hpp"
#include "odpx/requirements.hpp"

namespace odpx {

/// Curated relevant IRIs per (ontology, requirement) pair.
class GroundTruth {
 public:
  struct Entry {
    std::set<Iri> iris;
    bool not_applicable = false;
  };

  /// nullptr when the pair has no rows at all.
  const Entry* find(std::string_view ontology, std::string_view requirement_id) const;
  const std::map<std::pair<std::string, std::string>, Entry>& entries() const noexcept {
    return entries_;
  }
  bool empty() const noexcept { return entries_.empty(); }

  /// Throws FormatError when the pair is already marked not applicable.
  void add(const std::string& ontology, const std::string& requirement_id, Iri iri);
  /// Throws FormatError when the pair already has IRIs.
  void mark_not_applicable(const std::string& ontology, const std::string& requirement_id);

 private:
  std::map<std::pair<std::string, std::string>, Entry> entries_;
};

/// CSV with header "ontology,requirement_id,iri"; an iri of "N/A" marks the
/// pair not applicable. When `known_requirements` is given, any other
/// requirement id is an error. Throws FormatError.
GroundTruth load_ground_truth(std::string_view csv_text,
                              const std::set<std::string>* known_requirements = nullptr);

struct EvalRow {
  std::string ontology;
  std::string requirement_id;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t gt_count = 0;
  std::size_t ext_count = 0;
  std::size_t hits = 0;
  bool not_applicable = false;

  bool operator==(const EvalRow&) const = default;
};

/// Precision, recall and F1 of a retrieved set (duplicates ignored). P is 0
/// for an empty retrieval and F1 is 0 when P + R = 0. Throws Error on an
/// empty truth set.
EvalRow score(std::span<const Iri> retrieved, const std::set<Iri>& truth);
EvalRow score(const RetrievedSet& retrieved, const std::set<Iri>& truth);

/// Row from bare counts. Throws Error when gt == 0 or hits exceeds ext or gt.
EvalRow score_counts(std::size_t hits, std::size_t ext, std::size_t gt);

/// A row for a pair without adequate coverage.
EvalRow not_applicable_row(std::string ontology, std::string requirement_id);

/// One column group per requirement.
struct ReportColumn {
  std::string requirement_id;
  std::string heading;
};

/// req1/req2/req3 as Process, Resource and Project ODP.
std::vector<ReportColumn> default_report_columns();
std::vector<ReportColumn> report_columns(std::span<const Requirement> requirements);

enum class ReportFormat { markdown, csv };

/// One line per ontology in first-seen order; each group holds P, R, F1, GT
/// and Ext. Markdown rounds to 2 decimals (ties to even, computed on the
/// exact hit ratios) and shows "–" for missing or not-applicable cells; CSV
/// keeps full precision and leaves such cells empty.
std::string render_report(std::span<const EvalRow> rows, ReportFormat format,
                          std::span<const ReportColumn> columns);
std::string render_report(std::span<const EvalRow> rows, ReportFormat format);

/// numerator/denominator rounded to `decimals` places, ties to even, e.g.
/// (5, 8, 2) -> "0.62". A zero denominator gives 0.
std::string round_ratio(std::size_t numerator, std::size_t denominator, int decimals = 2);

}  // namespace odpx
