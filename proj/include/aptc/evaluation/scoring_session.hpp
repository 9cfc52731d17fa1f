#pragma once

#include "aptc/evaluation/scores.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace aptc::evaluation {

/// One APTC shown to a rater.
struct ScoringItem {
  AptcRef ref;
  std::string aptc_text;          ///< pretty-printed APTC JSON
  std::string report_text;        ///< pretty-printed ValidationReport
  std::string architecture_text;  ///< serialized Security Analysis View
};

struct SessionSummary {
  std::size_t scored = 0;
  std::size_t skipped = 0;
  std::size_t already_scored = 0;
  bool quit = false;
};

/// Terminal annotation loop. Each answered item is appended to the score
/// file immediately, so an interrupted session loses nothing. Items this
/// rater already scored in the file are not asked again.
class ScoringSession {
 public:
  ScoringSession(std::istream& in, std::ostream& out, std::filesystem::path score_file,
                 std::string rater, Method method);

  SessionSummary run(const std::vector<ScoringItem>& items);

 private:
  /// 0/1, -1 for skip, -2 for quit or EOF.
  int ask(const std::string& question);

  std::istream& in_;
  std::ostream& out_;
  std::filesystem::path score_file_;
  std::string rater_;
  Method method_;
};

}  // namespace aptc::evaluation
