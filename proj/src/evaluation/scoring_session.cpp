#include "aptc/evaluation/scoring_session.hpp"

#include <istream>
#include <ostream>
#include <set>

namespace aptc::evaluation {

ScoringSession::ScoringSession(std::istream& in, std::ostream& out,
                               std::filesystem::path score_file, std::string rater, Method method)
    : in_(in), out_(out), score_file_(std::move(score_file)), rater_(std::move(rater)),
      method_(method) {}

int ScoringSession::ask(const std::string& question) {
  std::string line;
  while (true) {
    out_ << question << " [0/1, s=skip, q=quit]: " << std::flush;
    if (!std::getline(in_, line)) return -2;
    auto first = line.find_first_not_of(" \t\r");
    std::string answer = first == std::string::npos ? "" : line.substr(first, 1);
    if (answer == "0") return 0;
    if (answer == "1") return 1;
    if (answer == "s" || answer == "S") return -1;
    if (answer == "q" || answer == "Q") return -2;
    out_ << "please answer 0, 1, s or q\n";
  }
}

SessionSummary ScoringSession::run(const std::vector<ScoringItem>& items) {
  SessionSummary summary;
  std::set<AptcRef> done;
  if (std::filesystem::exists(score_file_)) {
    for (const auto& s : ingest_scores_file(score_file_).scores) {
      if (s.rater == rater_) done.insert(s.ref);
    }
  }

  std::string shown_architecture;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& item = items[i];
    if (done.count(item.ref) != 0) {
      ++summary.already_scored;
      continue;
    }
    out_ << "\n=== [" << (i + 1) << "/" << items.size() << "] " << item.ref.model << " / "
         << prompting::to_string(item.ref.strategy) << " / " << item.ref.case_study << " / "
         << item.ref.weakness << " ===\n";
    if (item.architecture_text != shown_architecture) {
      out_ << "\n--- architecture ---\n" << item.architecture_text << "\n";
      shown_architecture = item.architecture_text;
    }
    out_ << "\n--- APTC ---\n" << item.aptc_text << "\n";
    out_ << "\n--- validation report ---\n" << item.report_text << "\n\n";

    int correctness = ask("correctness");
    if (correctness == -2) {
      summary.quit = true;
      break;
    }
    if (correctness == -1) {
      ++summary.skipped;
      continue;
    }
    int usefulness = ask("usefulness");
    if (usefulness == -2) {
      summary.quit = true;
      break;
    }
    if (usefulness == -1) {
      ++summary.skipped;
      continue;
    }
    append_scores(score_file_, {ExpertScore{item.ref, correctness, usefulness, rater_, method_}});
    done.insert(item.ref);
    ++summary.scored;
  }
  out_ << "\nscored " << summary.scored << ", skipped " << summary.skipped << ", already scored "
       << summary.already_scored << "\n";
  return summary;
}

}  // namespace aptc::evaluation
