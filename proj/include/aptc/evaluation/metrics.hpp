#pragma once

#include "aptc/catalog/catalog.hpp"
#include "aptc/evaluation/scores.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace aptc::evaluation {

enum class Metric { Correctness, Usefulness };

std::string_view to_string(Metric m);

struct MetricsRow {
  std::string model;
  prompting::Strategy strategy = prompting::Strategy::ZeroShot;
  Metric metric = Metric::Correctness;
  std::vector<int> per_case;  ///< aligned with MetricsTable::case_studies
  int total = 0;
  std::string success_rate;  ///< percent with one decimal, e.g. "86.7"

  bool operator==(const MetricsRow&) const = default;
};

struct MetricsTable {
  std::vector<std::string> case_studies;
  int per_case_denominator = 0;
  int total_denominator = 0;
  /// Ordered by strategy, then model label, then Correctness before Usefulness.
  std::vector<MetricsRow> rows;
  /// Coverage gaps; each missing APTC counts as 0.
  std::vector<std::string> warnings;

  bool operator==(const MetricsTable&) const = default;
};

/// 100*n/d rounded half-up to one decimal, using integer arithmetic only.
std::string format_rate(int numerator, int denominator);

struct AggregateOptions {
  std::vector<std::string> case_studies = default_case_studies();
  const catalog::Catalog* catalog = &catalog::Catalog::bundled();
};

/// Per (model, strategy) present in `scores`: counts per case study, total
/// over all cases and the success rate. Denominators are the catalog size
/// per case and catalog size times case count in total.
MetricsTable aggregate(const std::vector<UnifiedScore>& scores, const AggregateOptions& options = {});

enum class TableFormat { Markdown, Json, Csv };

std::optional<TableFormat> parse_table_format(std::string_view s);

std::string render_table(const MetricsTable& table, TableFormat format);
nlohmann::ordered_json table_to_json(const MetricsTable& table);
MetricsTable table_from_json(const nlohmann::json& j);

}  // namespace aptc::evaluation
