#pragma once

#include "aptc/catalog/catalog.hpp"
#include "aptc/prompting/prompt.hpp"

#include <compare>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aptc::evaluation {

enum class Method { Expert, LlmAssisted };

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view s);

/// Identifies one generated APTC: at most one per weakness per generation cell.
struct AptcRef {
  std::string model;
  prompting::Strategy strategy = prompting::Strategy::ZeroShot;
  std::string case_study;
  std::string weakness;  ///< canonical id

  auto operator<=>(const AptcRef&) const = default;
  bool operator==(const AptcRef&) const = default;
};

struct ExpertScore {
  AptcRef ref;
  int correctness = 0;  ///< 0 or 1
  int usefulness = 0;   ///< 0 or 1
  std::string rater;
  Method method = Method::Expert;

  bool operator==(const ExpertScore&) const = default;
};

enum class UnifyRule { And, Or, Majority };

std::string_view to_string(UnifyRule r);
std::optional<UnifyRule> parse_unify_rule(std::string_view s);

struct ScoreFile {
  std::vector<ExpertScore> scores;
  /// From a "# unify=<rule>" directive, if the file declares one.
  std::optional<UnifyRule> declared_rule;
};

class ScoreFormatError : public std::runtime_error {
 public:
  ScoreFormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DuplicateScore : public ScoreFormatError {
 public:
  using ScoreFormatError::ScoreFormatError;
};

class UnknownLabel : public ScoreFormatError {
 public:
  using ScoreFormatError::ScoreFormatError;
};

inline constexpr std::string_view kScoreHeader =
    "model,strategy,case_study,weakness,metric_correctness,metric_usefulness,rater,method";

/// Case-study column labels of the evaluation.
const std::vector<std::string>& default_case_studies();

struct IngestOptions {
  const catalog::Catalog* catalog = &catalog::Catalog::bundled();
  std::vector<std::string> case_studies = default_case_studies();
};

/// CSV with kScoreHeader. Blank lines and lines starting with '#' are
/// skipped; "# unify=and|or|majority" declares the unification rule.
ScoreFile ingest_scores(std::istream& in, const IngestOptions& options = {});
ScoreFile ingest_scores_file(const std::filesystem::path& path, const IngestOptions& options = {});

std::string to_csv_row(const ExpertScore& s);

/// Rewrites `path` with the new rows appended (temp file + rename). Creates
/// the file with a header when missing.
void append_scores(const std::filesystem::path& path, const std::vector<ExpertScore>& rows);

struct UnifiedScore {
  AptcRef ref;
  int correctness = 0;
  int usefulness = 0;
  bool operator==(const UnifiedScore&) const = default;
};

/// One binary per metric and APTC across all raters, sorted by AptcRef.
/// Majority needs strictly more than half of the raters.
std::vector<UnifiedScore> unify_scores(const std::vector<ExpertScore>& scores,
                                       UnifyRule rule = UnifyRule::And);

}  // namespace aptc::evaluation
