#include "aptc/evaluation/scores.hpp"
#include "aptc/core/weakness_id.hpp"
#include "aptc/util/files.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace aptc::evaluation {

namespace {

std::string trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

/// RFC 4180 fields of a single line (no embedded newlines).
std::vector<std::string> split_csv(std::string_view line, std::size_t line_no) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(trim(field));
      field.clear();
    } else {
      field.push_back(ch);
    }
  }
  if (quoted) throw ScoreFormatError(line_no, "unterminated quoted field");
  out.push_back(trim(field));
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out.push_back(ch);
  }
  return out + "\"";
}

int parse_bit(const std::string& s, std::size_t line, const char* column) {
  if (s == "0") return 0;
  if (s == "1") return 1;
  throw ScoreFormatError(line, std::string(column) + " must be 0 or 1, got '" + s + "'");
}

}  // namespace

std::string_view to_string(Method m) { return m == Method::Expert ? "expert" : "llm-assisted"; }

std::optional<Method> parse_method(std::string_view s) {
  if (s == "expert") return Method::Expert;
  if (s == "llm-assisted") return Method::LlmAssisted;
  return std::nullopt;
}

std::string_view to_string(UnifyRule r) {
  switch (r) {
    case UnifyRule::And: return "and";
    case UnifyRule::Or: return "or";
    case UnifyRule::Majority: return "majority";
  }
  return "?";
}

std::optional<UnifyRule> parse_unify_rule(std::string_view s) {
  if (s == "and") return UnifyRule::And;
  if (s == "or") return UnifyRule::Or;
  if (s == "majority") return UnifyRule::Majority;
  return std::nullopt;
}

const std::vector<std::string>& default_case_studies() {
  static const std::vector<std::string> labels{"Maintenance", "PowerGrid", "Bank"};
  return labels;
}

ScoreFile ingest_scores(std::istream& in, const IngestOptions& options) {
  ScoreFile file;
  std::set<std::pair<AptcRef, std::string>> seen;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      auto body = trim(std::string_view(t).substr(1));
      if (body.rfind("unify=", 0) == 0) {
        auto rule = parse_unify_rule(trim(std::string_view(body).substr(6)));
        if (!rule) throw ScoreFormatError(line_no, "unknown unification rule in '" + t + "'");
        file.declared_rule = rule;
      }
      continue;
    }
    if (!header_seen) {
      if (t != kScoreHeader) throw ScoreFormatError(line_no, "expected header '" + std::string(kScoreHeader) + "'");
      header_seen = true;
      continue;
    }
    auto f = split_csv(t, line_no);
    if (f.size() != 8) {
      throw ScoreFormatError(line_no, "expected 8 columns, got " + std::to_string(f.size()));
    }
    ExpertScore s;
    s.ref.model = f[0];
    if (s.ref.model.empty()) throw UnknownLabel(line_no, "empty model label");
    auto strategy = prompting::parse_strategy(f[1]);
    if (!strategy) throw UnknownLabel(line_no, "unknown strategy '" + f[1] + "'");
    s.ref.strategy = *strategy;
    if (std::find(options.case_studies.begin(), options.case_studies.end(), f[2]) ==
        options.case_studies.end()) {
      throw UnknownLabel(line_no, "unknown case study '" + f[2] + "'");
    }
    s.ref.case_study = f[2];
    auto weakness = core::try_normalize_weakness_id(f[3]);
    if (!weakness || !options.catalog->contains(*weakness)) {
      throw UnknownLabel(line_no, "weakness '" + f[3] + "' is not in the catalog");
    }
    s.ref.weakness = *weakness;
    s.correctness = parse_bit(f[4], line_no, "metric_correctness");
    s.usefulness = parse_bit(f[5], line_no, "metric_usefulness");
    s.rater = f[6];
    if (s.rater.empty()) throw ScoreFormatError(line_no, "empty rater");
    auto method = parse_method(f[7]);
    if (!method) throw UnknownLabel(line_no, "unknown method '" + f[7] + "'");
    s.method = *method;
    if (!seen.emplace(s.ref, s.rater).second) {
      throw DuplicateScore(line_no, "rater '" + s.rater + "' already scored " + s.ref.model + "/" +
                                        f[1] + "/" + s.ref.case_study + "/" + s.ref.weakness);
    }
    file.scores.push_back(std::move(s));
  }
  return file;
}

ScoreFile ingest_scores_file(const std::filesystem::path& path, const IngestOptions& options) {
  std::ifstream in(path);
  if (!in) throw util::IoError("cannot open " + path.string());
  return ingest_scores(in, options);
}

std::string to_csv_row(const ExpertScore& s) {
  std::ostringstream os;
  os << csv_field(s.ref.model) << ',' << prompting::to_string(s.ref.strategy) << ','
     << csv_field(s.ref.case_study) << ',' << s.ref.weakness << ',' << s.correctness << ','
     << s.usefulness << ',' << csv_field(s.rater) << ',' << to_string(s.method);
  return os.str();
}

void append_scores(const std::filesystem::path& path, const std::vector<ExpertScore>& rows) {
  std::string content;
  if (std::filesystem::exists(path)) content = util::read_file(path);
  if (content.empty()) content = std::string(kScoreHeader) + "\n";
  if (content.back() != '\n') content.push_back('\n');
  for (const auto& r : rows) content += to_csv_row(r) + "\n";
  util::write_file_atomic(path, content);
}

std::vector<UnifiedScore> unify_scores(const std::vector<ExpertScore>& scores, UnifyRule rule) {
  struct Tally {
    int raters = 0, correct = 0, useful = 0;
  };
  std::map<AptcRef, Tally> tallies;
  for (const auto& s : scores) {
    auto& t = tallies[s.ref];
    ++t.raters;
    t.correct += s.correctness;
    t.useful += s.usefulness;
  }
  auto decide = [rule](int ones, int raters) {
    switch (rule) {
      case UnifyRule::And: return ones == raters ? 1 : 0;
      case UnifyRule::Or: return ones > 0 ? 1 : 0;
      case UnifyRule::Majority: return 2 * ones > raters ? 1 : 0;
    }
    return 0;
  };
  std::vector<UnifiedScore> out;
  for (const auto& [ref, t] : tallies) {
    out.push_back({ref, decide(t.correct, t.raters), decide(t.useful, t.raters)});
  }
  return out;
}

}  // namespace aptc::evaluation
