#include "aptc/evaluation/metrics.hpp"
#include "aptc/evaluation/scores.hpp"
#include "aptc/evaluation/scoring_session.hpp"
#include "aptc/util/files.hpp"

#include "expected_table.hpp"
#include "temp_dir.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

using namespace aptc;
using namespace aptc::evaluation;
using prompting::Strategy;

namespace {

const std::string kData = APTC_DATA_DIR;
const std::string kHeader(kScoreHeader);

ScoreFile ingest(const std::string& text) {
  std::istringstream in(text);
  return ingest_scores(in);
}

std::vector<UnifiedScore> full_cell(const std::string& model, Strategy s,
                                    std::array<int, 3> correct, std::array<int, 3> useful) {
  std::vector<UnifiedScore> out;
  const auto& cases = default_case_studies();
  const auto& entries = catalog::Catalog::bundled().entries();
  for (std::size_t c = 0; c < cases.size(); ++c) {
    for (std::size_t w = 0; w < entries.size(); ++w) {
      out.push_back({{model, s, cases[c], entries[w].id},
                     static_cast<int>(w) < correct[c] ? 1 : 0,
                     static_cast<int>(w) < useful[c] ? 1 : 0});
    }
  }
  return out;
}

const MetricsRow& row(const MetricsTable& t, const std::string& model, Strategy s, Metric m) {
  auto it = std::find_if(t.rows.begin(), t.rows.end(), [&](const MetricsRow& r) {
    return r.model == model && r.strategy == s && r.metric == m;
  });
  if (it == t.rows.end()) throw std::runtime_error("row not found");
  return *it;
}

}  // namespace

TEST(Ingest, EmptyAndCommentsOnly) {
  EXPECT_TRUE(ingest("").scores.empty());
  auto f = ingest("# hello\n\n# unify=majority\n" + kHeader + "\n");
  EXPECT_TRUE(f.scores.empty());
  EXPECT_EQ(f.declared_rule, UnifyRule::Majority);
}

TEST(Ingest, ParsesAndNormalizes) {
  auto f = ingest(kHeader + "\nGPT-5.2,few,Bank,cawe-0862,1,0,\"Doe, J.\",llm-assisted\r\n");
  ASSERT_EQ(f.scores.size(), 1u);
  const auto& s = f.scores[0];
  EXPECT_EQ(s.ref, (AptcRef{"GPT-5.2", Strategy::FewShot, "Bank", "CWE-862"}));
  EXPECT_EQ(s.correctness, 1);
  EXPECT_EQ(s.usefulness, 0);
  EXPECT_EQ(s.rater, "Doe, J.");
  EXPECT_EQ(s.method, Method::LlmAssisted);
  EXPECT_FALSE(f.declared_rule);
}

TEST(Ingest, Errors) {
  auto row = [](const std::string& r) { return kHeader + "\n" + r + "\n"; };
  EXPECT_THROW(ingest(row("M,zero-shot,Bank,CWE-284,1,1,a,expert") +
                      "M,zero-shot,Bank,CWE-284,0,0,a,expert\n"),
               DuplicateScore);
  EXPECT_NO_THROW(ingest(row("M,zero-shot,Bank,CWE-284,1,1,a,expert") +
                         "M,zero-shot,Bank,CWE-284,0,0,b,expert\n"));
  EXPECT_THROW(ingest(row("M,two-shot,Bank,CWE-284,1,1,a,expert")), UnknownLabel);
  EXPECT_THROW(ingest(row("M,zero-shot,Atlantis,CWE-284,1,1,a,expert")), UnknownLabel);
  EXPECT_THROW(ingest(row("M,zero-shot,Bank,CWE-79,1,1,a,expert")), UnknownLabel);
  EXPECT_THROW(ingest(row("M,zero-shot,Bank,CWE-284,1,1,a,robot")), UnknownLabel);
  EXPECT_THROW(ingest(row("M,zero-shot,Bank,CWE-284,2,1,a,expert")), ScoreFormatError);
  EXPECT_THROW(ingest(row("M,zero-shot,Bank,CWE-284,1,1,a")), ScoreFormatError);
  EXPECT_THROW(ingest("M,zero-shot,Bank,CWE-284,1,1,a,expert\n"), ScoreFormatError);
  EXPECT_THROW(ingest("# unify=xor\n"), ScoreFormatError);
  try {
    ingest(row("M,zero-shot,Bank,CWE-284,1,1,a,expert") + "\nbad\n");
    FAIL();
  } catch (const ScoreFormatError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(Ingest, BundledFixtureShape) {
  auto f = ingest_scores_file(kData + "/scores/expert_scores.csv");
  EXPECT_EQ(f.declared_rule, UnifyRule::And);
  // 2 models x 3 strategies x 3 cases x 5 weaknesses, two raters each
  EXPECT_EQ(f.scores.size(), 180u);
  std::set<AptcRef> refs;
  for (const auto& s : f.scores) refs.insert(s.ref);
  EXPECT_EQ(refs.size(), 90u);
}

TEST(Unify, Rules) {
  AptcRef r{"M", Strategy::ZeroShot, "Bank", "CWE-284"};
  std::vector<ExpertScore> one{{r, 1, 0, "a", Method::Expert}};
  EXPECT_EQ(unify_scores(one), (std::vector<UnifiedScore>{{r, 1, 0}}));

  std::vector<ExpertScore> two{{r, 1, 1, "a", Method::Expert}, {r, 0, 1, "b", Method::LlmAssisted}};
  EXPECT_EQ(unify_scores(two, UnifyRule::And), (std::vector<UnifiedScore>{{r, 0, 1}}));
  EXPECT_EQ(unify_scores(two, UnifyRule::Or), (std::vector<UnifiedScore>{{r, 1, 1}}));
  // a 1-1 tie is not a majority
  EXPECT_EQ(unify_scores(two, UnifyRule::Majority), (std::vector<UnifiedScore>{{r, 0, 1}}));
  auto three = two;
  three.push_back({r, 1, 0, "c", Method::Expert});
  EXPECT_EQ(unify_scores(three, UnifyRule::Majority), (std::vector<UnifiedScore>{{r, 1, 1}}));
  EXPECT_TRUE(unify_scores({}).empty());

  EXPECT_EQ(parse_unify_rule("or"), UnifyRule::Or);
  EXPECT_FALSE(parse_unify_rule("xor"));
  EXPECT_EQ(to_string(UnifyRule::Majority), "majority");
}

TEST(Rate, HalfUpIntegerRounding) {
  EXPECT_EQ(format_rate(13, 15), "86.7");
  EXPECT_EQ(format_rate(6, 15), "40.0");
  EXPECT_EQ(format_rate(0, 15), "0.0");
  EXPECT_EQ(format_rate(15, 15), "100.0");
  EXPECT_EQ(format_rate(1, 8), "12.5");
  EXPECT_EQ(format_rate(1, 16), "6.3");   // 6.25 rounds up
  EXPECT_EQ(format_rate(1, 3), "33.3");
  EXPECT_EQ(format_rate(2, 3), "66.7");
  EXPECT_THROW(format_rate(1, 0), std::invalid_argument);
  EXPECT_THROW(format_rate(-1, 5), std::invalid_argument);
}

TEST(Rate, FifteenthsFormTheReferenceSet) {
  std::set<std::string> got, want(testkit::kRateSet.begin(), testkit::kRateSet.end());
  for (int t = 0; t <= 15; ++t) got.insert(format_rate(t, 15));
  EXPECT_EQ(got, want);
  for (const auto& r : testkit::kExpectedTable) EXPECT_TRUE(want.count(r.rate)) << r.rate;
}

// Rates recomputed with floating point as an oracle for the integer formula.
TEST(Rate, AgreesWithFloatingPointOracle) {
  for (int d = 1; d <= 60; ++d) {
    for (int n = 0; n <= d; ++n) {
      double tenths_exact = 1000.0 * n / d;
      auto tenths = static_cast<long long>(std::floor(tenths_exact + 0.5 + 1e-9));
      char buf[32];
      std::snprintf(buf, sizeof buf, "%lld.%lld", tenths / 10, tenths % 10);
      ASSERT_EQ(format_rate(n, d), buf) << n << "/" << d;
    }
  }
}

TEST(Aggregate, Examples) {
  auto scores = full_cell("GPT-5.2", Strategy::ZeroShot, {2, 3, 4}, {5, 4, 4});
  auto more = full_cell("Gemini-3-Pro", Strategy::FewShot, {2, 2, 2}, {0, 0, 0});
  scores.insert(scores.end(), more.begin(), more.end());
  auto t = aggregate(scores);
  EXPECT_TRUE(t.warnings.empty());
  EXPECT_EQ(t.per_case_denominator, 5);
  EXPECT_EQ(t.total_denominator, 15);
  ASSERT_EQ(t.rows.size(), 4u);
  auto& u = row(t, "GPT-5.2", Strategy::ZeroShot, Metric::Usefulness);
  EXPECT_EQ(u.per_case, (std::vector<int>{5, 4, 4}));
  EXPECT_EQ(u.total, 13);
  EXPECT_EQ(u.success_rate, "86.7");
  auto& c = row(t, "Gemini-3-Pro", Strategy::FewShot, Metric::Correctness);
  EXPECT_EQ(c.total, 6);
  EXPECT_EQ(c.success_rate, "40.0");
  auto& z = row(t, "Gemini-3-Pro", Strategy::FewShot, Metric::Usefulness);
  EXPECT_EQ(z.total, 0);
  EXPECT_EQ(z.success_rate, "0.0");
  // ordering: strategy, then model, correctness first
  EXPECT_EQ(t.rows[0].strategy, Strategy::ZeroShot);
  EXPECT_EQ(t.rows[0].metric, Metric::Correctness);
  EXPECT_EQ(t.rows[1].metric, Metric::Usefulness);
}

TEST(Aggregate, MissingScoresCountAsZeroWithWarning) {
  auto scores = full_cell("M", Strategy::OneShot, {5, 5, 5}, {5, 5, 5});
  scores.erase(scores.begin() + 7);  // PowerGrid / third weakness
  auto t = aggregate(scores);
  ASSERT_EQ(t.warnings.size(), 1u);
  EXPECT_NE(t.warnings[0].find("PowerGrid"), std::string::npos);
  EXPECT_NE(t.warnings[0].find("CWE-862"), std::string::npos);
  EXPECT_EQ(row(t, "M", Strategy::OneShot, Metric::Correctness).per_case, (std::vector<int>{5, 4, 5}));
  EXPECT_EQ(row(t, "M", Strategy::OneShot, Metric::Correctness).total, 14);
}

TEST(Aggregate, RejectsForeignRows) {
  std::vector<UnifiedScore> bad{{{"M", Strategy::ZeroShot, "Atlantis", "CWE-284"}, 1, 1}};
  EXPECT_THROW(aggregate(bad), std::invalid_argument);
  bad = {{{"M", Strategy::ZeroShot, "Bank", "CWE-79"}, 1, 1}};
  EXPECT_THROW(aggregate(bad), std::invalid_argument);
  bad = {{{"M", Strategy::ZeroShot, "Bank", "CWE-284"}, 1, 1}, {{"M", Strategy::ZeroShot, "Bank", "CWE-284"}, 0, 1}};
  EXPECT_THROW(aggregate(bad), std::invalid_argument);
}

TEST(Aggregate, PermutationInvariant) {
  auto scores = unify_scores(ingest_scores_file(kData + "/scores/expert_scores.csv").scores);
  auto base = aggregate(scores);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(scores.begin(), scores.end(), rng);
    ASSERT_EQ(aggregate(scores), base);
  }
}

TEST(Aggregate, BundledFixtureMatchesReferenceTable) {
  auto file = ingest_scores_file(kData + "/scores/expert_scores.csv");
  auto t = aggregate(unify_scores(file.scores, *file.declared_rule));
  ASSERT_EQ(t.rows.size(), testkit::kExpectedTable.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& want = testkit::kExpectedTable[i];
    const auto& got = t.rows[i];
    EXPECT_EQ(prompting::to_string(got.strategy), want.strategy);
    EXPECT_EQ(got.model, want.model);
    EXPECT_EQ(to_string(got.metric), want.metric);
    EXPECT_EQ(got.per_case, std::vector<int>(want.per_case.begin(), want.per_case.end()));
    EXPECT_EQ(got.total, want.total);
    EXPECT_EQ(got.success_rate, want.rate);
  }
  // the fixture is sensitive to the rule
  EXPECT_NE(aggregate(unify_scores(file.scores, UnifyRule::Or)), t);
}

TEST(Render, MarkdownLayout) {
  auto file = ingest_scores_file(kData + "/scores/expert_scores.csv");
  auto md = render_table(aggregate(unify_scores(file.scores)), TableFormat::Markdown);
  EXPECT_NE(md.find("| Model | Metric | Maintenance | PowerGrid | Bank | Total/15 | Success Rate |"),
            std::string::npos);
  EXPECT_NE(md.find("| Gemini-3-Pro | Usefulness | 5/5 | 5/5 | 4/5 | 14/15 | 93.3% |"), std::string::npos);
  auto zero = md.find("**Zero-shot prompting**");
  auto one = md.find("**One-shot prompting**");
  auto few = md.find("**Few-shot prompting**");
  EXPECT_LT(zero, one);
  EXPECT_LT(one, few);
  EXPECT_NE(few, std::string::npos);
}

TEST(Render, EmptyTableIsHeaderOnly) {
  auto t = aggregate({});
  auto md = render_table(t, TableFormat::Markdown);
  EXPECT_EQ(std::count(md.begin(), md.end(), '\n'), 2);
  auto csv = render_table(t, TableFormat::Csv);
  EXPECT_EQ(csv, "model,strategy,metric,Maintenance,PowerGrid,Bank,total,success_rate\n");
}

TEST(Render, JsonRoundTripAndCsv) {
  auto scores = full_cell("GPT-5.2", Strategy::OneShot, {1, 2, 3}, {3, 2, 1});
  scores.pop_back();
  auto t = aggregate(scores);
  auto back = table_from_json(nlohmann::json::parse(render_table(t, TableFormat::Json)));
  EXPECT_EQ(back, t);
  auto csv = render_table(t, TableFormat::Csv);
  EXPECT_NE(csv.find("GPT-5.2,one-shot,correctness,1,2,3,6,40.0\n"), std::string::npos);
  EXPECT_EQ(render_table(t, TableFormat::Csv), csv);
  EXPECT_EQ(parse_table_format("md"), TableFormat::Markdown);
  EXPECT_FALSE(parse_table_format("html"));
}

TEST(ScoreFile, AppendCreatesThenExtends) {
  testkit::TempDir dir;
  auto path = dir / "scores.csv";
  AptcRef a{"M", Strategy::FewShot, "Bank", "CWE-284"};
  AptcRef b{"M, Inc.", Strategy::FewShot, "Bank", "CWE-285"};
  append_scores(path, {{a, 1, 0, "r", Method::Expert}});
  append_scores(path, {{b, 0, 1, "r", Method::LlmAssisted}});
  auto f = ingest_scores_file(path);
  ASSERT_EQ(f.scores.size(), 2u);
  EXPECT_EQ(f.scores[1].ref, b);
  EXPECT_EQ(f.scores[1].method, Method::LlmAssisted);
  auto text = util::read_file(path);
  EXPECT_EQ(text.rfind(kHeader, 0), 0u);
  EXPECT_EQ(text.find(kHeader, 1), std::string::npos);
}

TEST(Session, ScriptedAnswers) {
  testkit::TempDir dir;
  auto path = dir / "scores.csv";
  std::vector<ScoringItem> items;
  for (const char* w : {"CWE-284", "CWE-285", "CWE-862"}) {
    items.push_back({{"M", Strategy::ZeroShot, "Bank", w}, "{aptc}", "{report}", "ARCH"});
  }
  std::istringstream in("1\nx\n0\ns\n1\n1\n");
  std::ostringstream out;
  auto sum = ScoringSession(in, out, path, "alice", Method::Expert).run(items);
  EXPECT_EQ(sum.scored, 2u);
  EXPECT_EQ(sum.skipped, 1u);
  EXPECT_FALSE(sum.quit);
  auto text = out.str();
  // architecture shown once, each APTC shown
  EXPECT_EQ(text.find("ARCH"), text.rfind("ARCH"));
  EXPECT_NE(text.find("please answer"), std::string::npos);
  auto f = ingest_scores_file(path);
  ASSERT_EQ(f.scores.size(), 2u);
  EXPECT_EQ(f.scores[0], (ExpertScore{items[0].ref, 1, 0, "alice", Method::Expert}));
  EXPECT_EQ(f.scores[1], (ExpertScore{items[2].ref, 1, 1, "alice", Method::Expert}));

  // resuming skips what alice already scored; quitting keeps earlier answers
  std::istringstream in2("0\n1\nq\n");
  std::ostringstream out2;
  auto again = ScoringSession(in2, out2, path, "alice", Method::Expert).run(items);
  EXPECT_EQ(again.already_scored, 2u);
  EXPECT_EQ(again.scored, 1u);
  std::istringstream in3("1\n");
  std::ostringstream out3;
  auto bob = ScoringSession(in3, out3, path, "bob", Method::LlmAssisted).run(items);
  EXPECT_TRUE(bob.quit);  // EOF mid-item
  EXPECT_EQ(bob.scored, 0u);
  EXPECT_EQ(ingest_scores_file(path).scores.size(), 3u);
}
