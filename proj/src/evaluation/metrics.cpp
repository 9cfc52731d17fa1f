#include "aptc/evaluation/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace aptc::evaluation {

namespace {

std::string_view strategy_heading(prompting::Strategy s) {
  switch (s) {
    case prompting::Strategy::ZeroShot: return "Zero-shot prompting";
    case prompting::Strategy::OneShot: return "One-shot prompting";
    case prompting::Strategy::FewShot: return "Few-shot prompting";
    case prompting::Strategy::ChainOfThought: return "Chain-of-thought prompting";
  }
  return "?";
}

Metric parse_metric(const std::string& s) {
  if (s == "correctness") return Metric::Correctness;
  if (s == "usefulness") return Metric::Usefulness;
  throw std::invalid_argument("unknown metric '" + s + "'");
}

std::string render_markdown(const MetricsTable& t) {
  std::ostringstream os;
  std::string total_col = "Total/" + std::to_string(t.total_denominator);
  os << "| Model | Metric |";
  for (const auto& c : t.case_studies) os << ' ' << c << " |";
  os << ' ' << total_col << " | Success Rate |\n|---|---|";
  for (std::size_t i = 0; i < t.case_studies.size(); ++i) os << "---|";
  os << "---|---|\n";
  std::optional<prompting::Strategy> current;
  for (const auto& r : t.rows) {
    if (current != r.strategy) {
      current = r.strategy;
      os << "| **" << strategy_heading(r.strategy) << "** | |";
      for (std::size_t i = 0; i < t.case_studies.size(); ++i) os << " |";
      os << " | |\n";
    }
    os << "| " << r.model << " | " << (r.metric == Metric::Correctness ? "Correctness" : "Usefulness")
       << " |";
    for (int v : r.per_case) os << ' ' << v << '/' << t.per_case_denominator << " |";
    os << ' ' << r.total << '/' << t.total_denominator << " | " << r.success_rate << "% |\n";
  }
  for (const auto& w : t.warnings) os << "\n> warning: " << w;
  if (!t.warnings.empty()) os << "\n";
  return os.str();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

std::string render_csv(const MetricsTable& t) {
  std::ostringstream os;
  os << "model,strategy,metric";
  for (const auto& c : t.case_studies) os << ',' << csv_escape(c);
  os << ",total,success_rate\n";
  for (const auto& r : t.rows) {
    os << csv_escape(r.model) << ',' << prompting::to_string(r.strategy) << ','
       << to_string(r.metric);
    for (int v : r.per_case) os << ',' << v;
    os << ',' << r.total << ',' << r.success_rate << '\n';
  }
  return os.str();
}

}  // namespace

std::string_view to_string(Metric m) {
  return m == Metric::Correctness ? "correctness" : "usefulness";
}

std::string format_rate(int numerator, int denominator) {
  if (denominator <= 0) throw std::invalid_argument("rate denominator must be positive");
  if (numerator < 0) throw std::invalid_argument("rate numerator must be non-negative");
  // tenths of a percent, half-up: floor((2000 n + d) / 2d)
  long long tenths = (2000LL * numerator + denominator) / (2LL * denominator);
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

MetricsTable aggregate(const std::vector<UnifiedScore>& scores, const AggregateOptions& options) {
  MetricsTable t;
  t.case_studies = options.case_studies;
  const auto& entries = options.catalog->entries();
  t.per_case_denominator = static_cast<int>(entries.size());
  t.total_denominator = t.per_case_denominator * static_cast<int>(t.case_studies.size());

  std::map<std::pair<prompting::Strategy, std::string>, std::map<std::pair<std::string, std::string>, const UnifiedScore*>>
      cells;
  for (const auto& s : scores) {
    auto col = std::find(t.case_studies.begin(), t.case_studies.end(), s.ref.case_study);
    if (col == t.case_studies.end()) {
      throw std::invalid_argument("score for unknown case study '" + s.ref.case_study + "'");
    }
    if (!options.catalog->contains(s.ref.weakness)) {
      throw std::invalid_argument("score for weakness outside the catalog: " + s.ref.weakness);
    }
    auto& cell = cells[{s.ref.strategy, s.ref.model}];
    if (!cell.emplace(std::make_pair(s.ref.case_study, s.ref.weakness), &s).second) {
      throw std::invalid_argument("duplicate unified score for " + s.ref.model + "/" +
                                  s.ref.case_study + "/" + s.ref.weakness);
    }
  }

  for (const auto& [key, cell] : cells) {
    const auto& [strategy, model] = key;
    MetricsRow correct{model, strategy, Metric::Correctness, {}, 0, {}};
    MetricsRow useful{model, strategy, Metric::Usefulness, {}, 0, {}};
    for (const auto& cs : t.case_studies) {
      int c = 0, u = 0;
      for (const auto& e : entries) {
        auto it = cell.find({cs, e.id});
        if (it == cell.end()) {
          t.warnings.push_back("missing score for " + model + " / " +
                               std::string(prompting::to_string(strategy)) + " / " + cs + " / " +
                               e.id + "; counted as 0");
          continue;
        }
        c += it->second->correctness;
        u += it->second->usefulness;
      }
      correct.per_case.push_back(c);
      useful.per_case.push_back(u);
      correct.total += c;
      useful.total += u;
    }
    correct.success_rate = format_rate(correct.total, t.total_denominator);
    useful.success_rate = format_rate(useful.total, t.total_denominator);
    t.rows.push_back(std::move(correct));
    t.rows.push_back(std::move(useful));
  }
  return t;
}

std::optional<TableFormat> parse_table_format(std::string_view s) {
  if (s == "md" || s == "markdown") return TableFormat::Markdown;
  if (s == "json") return TableFormat::Json;
  if (s == "csv") return TableFormat::Csv;
  return std::nullopt;
}

nlohmann::ordered_json table_to_json(const MetricsTable& t) {
  nlohmann::ordered_json j;
  j["caseStudies"] = t.case_studies;
  j["perCaseDenominator"] = t.per_case_denominator;
  j["totalDenominator"] = t.total_denominator;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    j["rows"].push_back({{"model", r.model},
                         {"strategy", prompting::to_string(r.strategy)},
                         {"metric", to_string(r.metric)},
                         {"perCase", r.per_case},
                         {"total", r.total},
                         {"successRate", r.success_rate}});
  }
  j["warnings"] = t.warnings;
  return j;
}

MetricsTable table_from_json(const nlohmann::json& j) {
  MetricsTable t;
  t.case_studies = j.at("caseStudies").get<std::vector<std::string>>();
  t.per_case_denominator = j.at("perCaseDenominator").get<int>();
  t.total_denominator = j.at("totalDenominator").get<int>();
  for (const auto& r : j.at("rows")) {
    MetricsRow row;
    row.model = r.at("model").get<std::string>();
    auto s = prompting::parse_strategy(r.at("strategy").get<std::string>());
    if (!s) throw std::invalid_argument("unknown strategy " + r.at("strategy").dump());
    row.strategy = *s;
    row.metric = parse_metric(r.at("metric").get<std::string>());
    row.per_case = r.at("perCase").get<std::vector<int>>();
    if (row.per_case.size() != t.case_studies.size()) {
      throw std::invalid_argument("row for " + row.model + " has the wrong number of case columns");
    }
    row.total = r.at("total").get<int>();
    row.success_rate = r.at("successRate").get<std::string>();
    t.rows.push_back(std::move(row));
  }
  t.warnings = j.value("warnings", std::vector<std::string>{});
  return t;
}

std::string render_table(const MetricsTable& table, TableFormat format) {
  switch (format) {
    case TableFormat::Markdown: return render_markdown(table);
    case TableFormat::Json: return table_to_json(table).dump(2) + "\n";
    case TableFormat::Csv: return render_csv(table);
  }
  return "";
}

}  // namespace aptc::evaluation
