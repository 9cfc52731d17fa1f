#include "aptc/arch/model.hpp"
#include "aptc/pipeline/run.hpp"
#include "aptc/util/digest.hpp"
#include "aptc/util/files.hpp"
#include "aptc/validation/validate.hpp"

#include "temp_dir.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <map>

using namespace aptc;
using namespace aptc::pipeline;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kData = APTC_DATA_DIR;

class CountingTransport : public llm::HttpTransport {
 public:
  std::atomic<int> calls{0};
  llm::HttpResponse post(const llm::HttpRequest&) override {
    ++calls;
    throw llm::TransportFailure("network access is not allowed in tests", false);
  }
};

RunConfig replay_config(const fs::path& out) {
  auto c = RunConfig::from_file(kData + "/run_replay.json");
  c.output_dir = out;
  return c;
}

/// cell dir -> file -> content, for every artifact of every cell.
std::map<std::string, std::map<std::string, std::string>> artifacts(const RunResult& r) {
  std::map<std::string, std::map<std::string, std::string>> out;
  for (const auto& c : r.cells) {
    for (const char* f : {"view.txt", "prompt.json", "generation.json", "aptcs.json", "validation.json"}) {
      auto p = r.run_dir / c.dir / f;
      if (fs::exists(p)) out[c.dir.generic_string()][f] = util::read_file(p);
    }
  }
  return out;
}

}  // namespace

TEST(RunConfig, ParsesAndResolvesRelativePaths) {
  auto c = RunConfig::from_file(kData + "/run_replay.json");
  ASSERT_EQ(c.architecture_paths.size(), 3u);
  EXPECT_TRUE(fs::exists(c.architecture_paths[0]));
  ASSERT_EQ(c.providers.size(), 2u);
  EXPECT_TRUE(fs::is_directory(c.providers[0].fixtures_path));
  EXPECT_EQ(c.strategies.size(), 3u);
  EXPECT_EQ(c.parallelism, 4);
  auto again = RunConfig::from_json(json(c.to_json()));
  EXPECT_EQ(again.to_json(), c.to_json());
}

TEST(RunConfig, Rejections) {
  json base = json(RunConfig::from_file(kData + "/run_replay.json").to_json());
  auto bad = base;
  bad["surprise"] = 1;
  EXPECT_THROW(RunConfig::from_json(bad), ConfigError);
  bad = base;
  bad["parallelism"] = 0;
  EXPECT_THROW(RunConfig::from_json(bad), ConfigError);
  bad = base;
  bad["strategies"] = json::array();
  EXPECT_THROW(RunConfig::from_json(bad), ConfigError);
  bad = base;
  bad["strategies"] = {"two-shot"};
  EXPECT_THROW(RunConfig::from_json(bad), ConfigError);
  bad = base;
  bad["providers"].push_back(bad["providers"][0]);
  EXPECT_THROW(RunConfig::from_json(bad), ConfigError);
}

TEST(InputsDigest, CoversInputsButNotParallelism) {
  auto c = RunConfig::from_file(kData + "/run_replay.json");
  auto d = inputs_digest(c);
  auto p = c;
  p.parallelism = 1;
  p.output_dir = "elsewhere";
  EXPECT_EQ(inputs_digest(p), d);
  auto s = c;
  s.strategies.pop_back();
  EXPECT_NE(inputs_digest(s), d);
  auto f = c;
  f.strict_deployment = true;
  EXPECT_NE(inputs_digest(f), d);
  auto a = c;
  std::swap(a.architecture_paths[0], a.architecture_paths[1]);
  EXPECT_NE(inputs_digest(a), d);
}

TEST(Pipeline, ReplayRunProducesEveryCellOffline) {
  testkit::TempDir out;
  auto transport = std::make_shared<CountingTransport>();
  auto r = run_pipeline(replay_config(out.path()), {transport, {}, std::nullopt});
  EXPECT_EQ(transport->calls, 0);
  ASSERT_EQ(r.cells.size(), 18u);
  EXPECT_EQ(r.failed_cells(), 0u);
  std::map<std::string, int> per_model;
  for (const auto& c : r.cells) {
    EXPECT_TRUE(c.ok) << c.dir << ": " << c.error;
    EXPECT_GE(c.aptc_count, 1u);
    ++per_model[c.model];
  }
  EXPECT_EQ(per_model["GPT-5.2"], 9);
  EXPECT_EQ(per_model["Gemini-3-Pro"], 9);
  EXPECT_EQ(r.run_dir.filename().string().rfind("run-" + r.inputs_digest.substr(0, 12) + "-", 0), 0u);
  EXPECT_TRUE(fs::exists(r.run_dir / "Maintenance" / "GPT-5.2" / "few-shot" / "validation.json"));
}

TEST(Pipeline, ManifestRecordsArtifactsWithDigests) {
  testkit::TempDir out;
  auto r = run_pipeline(replay_config(out.path()), {std::make_shared<CountingTransport>(), {}, 2});
  auto m = json::parse(util::read_file(r.run_dir / "manifest.json"));
  EXPECT_EQ(m["runId"], r.run_dir.filename().string());
  EXPECT_EQ(m["inputsDigest"], r.inputs_digest);
  ASSERT_EQ(m["cells"].size(), 18u);
  for (const auto& cell : m["cells"]) {
    EXPECT_EQ(cell["status"], "ok");
    ASSERT_EQ(cell["artifacts"].size(), 5u);
    for (const auto& a : cell["artifacts"]) {
      auto content = util::read_file(r.run_dir / a["path"].get<std::string>());
      EXPECT_EQ(a["sha256"], util::sha256_hex(content));
    }
    EXPECT_TRUE(cell["timing"].contains("latencyMs"));
  }
}

TEST(Pipeline, DeterministicAcrossRunsAndParallelism) {
  testkit::TempDir out;
  auto transport = std::make_shared<CountingTransport>();
  auto a = run_pipeline(replay_config(out.path()), {transport, {}, 1});
  auto b = run_pipeline(replay_config(out.path()), {transport, {}, 4});
  auto c = run_pipeline(replay_config(out.path()), {transport, {}, 4});
  EXPECT_EQ(transport->calls, 0);
  EXPECT_NE(a.run_dir, b.run_dir);
  EXPECT_NE(b.run_dir, c.run_dir);
  EXPECT_EQ(a.inputs_digest, b.inputs_digest);
  auto aa = artifacts(a);
  EXPECT_EQ(aa.size(), 18u);
  EXPECT_EQ(aa, artifacts(b));
  EXPECT_EQ(aa, artifacts(c));
}

// validation.json recomputed from aptcs.json and the architecture file.
TEST(Pipeline, StoredReportsMatchRevalidation) {
  testkit::TempDir out;
  auto config = replay_config(out.path());
  auto r = run_pipeline(config, {std::make_shared<CountingTransport>(), {}, std::nullopt});
  std::map<std::string, arch::ArchitectureModel> models;
  for (const auto& p : config.architecture_paths) {
    auto m = arch::load_architecture_file(p);
    models.emplace(m.name, m);
  }
  std::size_t passing = 0, total = 0;
  for (const auto& c : r.cells) {
    auto batch = json::parse(util::read_file(r.run_dir / c.dir / "aptcs.json"));
    auto stored = json::parse(util::read_file(r.run_dir / c.dir / "validation.json"));
    auto fresh = validation::validate_documents(batch, models.at(c.case_study),
                                                catalog::Catalog::bundled().entries());
    EXPECT_EQ(json(validation::reports_to_json(fresh)), stored) << c.dir;
    for (const auto& rep : fresh) passing += rep.correctness_auto;
    total += fresh.size();
    EXPECT_EQ(c.aptc_count, batch.size());
  }
  // the fixtures mix grounded and flawed APTCs
  EXPECT_GT(passing, 0u);
  EXPECT_LT(passing, total);
}

TEST(Pipeline, FailingCellsAreIsolated) {
  testkit::TempDir out, empty;
  auto config = replay_config(out.path());
  config.providers[1].fixtures_path = empty.path();
  config.architecture_paths.push_back(out / "missing.json");
  auto r = run_pipeline(config, {std::make_shared<CountingTransport>(), {}, std::nullopt});
  ASSERT_EQ(r.cells.size(), 24u);
  int ok = 0, generate = 0, load = 0;
  for (const auto& c : r.cells) {
    if (c.ok) ++ok;
    else if (c.failed_stage == "generate") ++generate;
    else if (c.failed_stage == "load") ++load;
  }
  EXPECT_EQ(ok, 9);
  EXPECT_EQ(generate, 9);
  EXPECT_EQ(load, 6);
  auto m = json::parse(util::read_file(r.run_dir / "manifest.json"));
  int failed = 0;
  for (const auto& cell : m["cells"]) {
    if (cell["status"] == "failed") {
      ++failed;
      EXPECT_FALSE(cell["error"].get<std::string>().empty());
    }
  }
  EXPECT_EQ(failed, 15);
}

TEST(Pipeline, EarlierRunsAreNeverModified) {
  testkit::TempDir out;
  auto first = run_pipeline(replay_config(out.path()), {std::make_shared<CountingTransport>(), {}, 1});
  auto before = artifacts(first);
  auto manifest = util::read_file(first.run_dir / "manifest.json");
  run_pipeline(replay_config(out.path()), {std::make_shared<CountingTransport>(), {}, 3});
  EXPECT_EQ(artifacts(first), before);
  EXPECT_EQ(util::read_file(first.run_dir / "manifest.json"), manifest);
  int dirs = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(out.path())) ++dirs;
  EXPECT_EQ(dirs, 2);
}

TEST(Pipeline, ScoringItemsOnePerWeaknessPerCell) {
  testkit::TempDir out;
  auto r = run_pipeline(replay_config(out.path()), {std::make_shared<CountingTransport>(), {}, std::nullopt});
  auto items = collect_scoring_items(r.run_dir);
  EXPECT_FALSE(items.empty());
  std::set<evaluation::AptcRef> refs;
  for (const auto& i : items) {
    EXPECT_TRUE(refs.insert(i.ref).second);
    EXPECT_TRUE(catalog::Catalog::bundled().contains(i.ref.weakness) || i.ref.weakness.rfind("CWE-", 0) == 0);
    EXPECT_FALSE(i.architecture_text.empty());
  }
  EXPECT_LE(items.size(), 18u * 5u + 18u);
}

TEST(PathComponent, Sanitizes) {
  EXPECT_EQ(path_component("GPT-5.2"), "GPT-5.2");
  EXPECT_EQ(path_component("a b/c"), "a_b_c");
  EXPECT_EQ(path_component(".."), "_..");
  EXPECT_EQ(path_component(""), "_");
}
