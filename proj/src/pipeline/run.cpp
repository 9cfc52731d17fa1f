#include "aptc/pipeline/run.hpp"
#include "aptc/arch/model.hpp"
#include "aptc/catalog/catalog.hpp"
#include "aptc/core/weakness_id.hpp"
#include "aptc/llm/extract_json.hpp"
#include "aptc/serializer/security_view.hpp"
#include "aptc/util/digest.hpp"
#include "aptc/util/files.hpp"
#include "aptc/util/time.hpp"
#include "aptc/validation/validate.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <thread>

namespace aptc::pipeline {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Architecture {
  fs::path path;
  std::optional<arch::ArchitectureModel> model;
  std::optional<serializer::SecurityView> view;
  std::string error;
};

struct Artifact {
  std::string name;
  std::string path;  ///< relative to the run directory
  std::string sha256;
};

struct CellRecord {
  CellResult result;
  std::vector<Artifact> artifacts;
  std::chrono::system_clock::time_point started, finished;
  long long latency_ms = 0;
};

fs::path fresh_run_dir(const fs::path& output_dir, const std::string& digest) {
  fs::create_directories(output_dir);
  std::string stem = "run-" + digest.substr(0, 12) + "-";
  for (int n = 1;; ++n) {
    fs::path candidate = output_dir / (stem + std::to_string(n));
    if (fs::create_directory(candidate)) return candidate;
  }
}

std::optional<std::string> weakness_of(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("CAWE")) return std::nullopt;
  const auto& c = doc.at("CAWE");
  const nlohmann::json* first = &c;
  if (c.is_array()) {
    if (c.empty()) return std::nullopt;
    first = &c.front();
  }
  if (!first->is_string()) return std::nullopt;
  return core::try_normalize_weakness_id(first->get<std::string>());
}

class CellRunner {
 public:
  CellRunner(const fs::path& run_dir, const RunConfig& config, const catalog::Catalog& catalog,
             const llm::Gateway& gateway)
      : run_dir_(run_dir), config_(config), catalog_(catalog), gateway_(gateway) {}

  CellRecord run(const Architecture& a, const llm::ProviderConfig& provider,
                 prompting::Strategy strategy) const {
    CellRecord rec;
    rec.started = std::chrono::system_clock::now();
    auto& r = rec.result;
    r.model = provider.model_id;
    r.strategy = strategy;
    r.case_study = a.model ? a.model->name : a.path.stem().string();
    r.dir = fs::path(path_component(r.case_study)) / path_component(r.model) /
            std::string(prompting::to_string(strategy));
    std::string stage = "load";
    try {
      if (!a.model) throw std::runtime_error(a.error);
      fs::create_directories(run_dir_ / r.dir);

      stage = "serialize";
      write(rec, "view", "view.txt", a.view->full_text);

      stage = "prompt";
      auto exemplars = prompting::default_exemplars(strategy, config_.shots);
      auto bundle =
          prompting::build_prompt(*a.view, strategy, catalog_.entries(), exemplars, catalog_);
      ordered_json prompt;
      prompt["caseStudy"] = bundle.case_study;
      prompt["strategy"] = prompting::to_string(strategy);
      prompt["targetWeaknesses"] = bundle.target_weaknesses;
      prompt["exemplars"] = ordered_json::array();
      for (const auto& e : exemplars) prompt["exemplars"].push_back(e.label);
      prompt["promptDigest"] = llm::prompt_digest(bundle);
      prompt["systemMessage"] = bundle.system_message;
      prompt["userMessage"] = bundle.user_message;
      write(rec, "prompt", "prompt.json", prompt.dump(2) + "\n");

      stage = "generate";
      auto generation = gateway_.generate(bundle, provider);
      rec.latency_ms = generation.latency.count();
      ordered_json gen;
      gen["requestKey"] = generation.request_key;
      gen["promptDigest"] = generation.prompt_digest;
      gen["modelId"] = generation.model_id;
      gen["strategy"] = generation.strategy;
      gen["caseStudy"] = generation.case_study;
      gen["weaknesses"] = generation.weaknesses;
      gen["rawResponse"] = generation.raw_response;
      write(rec, "generation", "generation.json", gen.dump(2) + "\n");

      stage = "extract";
      auto pick = strategy == prompting::Strategy::ChainOfThought ? llm::Pick::Last : llm::Pick::First;
      auto extracted = llm::extract_json(generation.raw_response, pick);
      ordered_json batch = extracted.is_array() ? extracted : ordered_json::array({extracted});
      write(rec, "aptcs", "aptcs.json", batch.dump(2) + "\n");
      r.aptc_count = batch.size();

      stage = "validate";
      validation::ValidationOptions vopts;
      vopts.strict_deployment = config_.strict_deployment;
      auto reports =
          validation::validate_documents(nlohmann::json(batch), *a.model, catalog_.entries(), vopts);
      r.correctness_auto_count = static_cast<std::size_t>(std::count_if(
          reports.begin(), reports.end(), [](const auto& v) { return v.correctness_auto; }));
      write(rec, "validation", "validation.json", validation::reports_to_json(reports).dump(2) + "\n");
      r.ok = true;
    } catch (const std::exception& e) {
      r.ok = false;
      r.failed_stage = stage;
      r.error = e.what();
    }
    rec.finished = std::chrono::system_clock::now();
    return rec;
  }

 private:
  void write(CellRecord& rec, const std::string& name, const std::string& file,
             const std::string& content) const {
    fs::path rel = rec.result.dir / file;
    util::write_file_atomic(run_dir_ / rel, content);
    rec.artifacts.push_back({name, rel.generic_string(), util::sha256_hex(content)});
  }

  const fs::path& run_dir_;
  const RunConfig& config_;
  const catalog::Catalog& catalog_;
  const llm::Gateway& gateway_;
};

ordered_json manifest_json(const RunConfig& config, const std::string& digest,
                           const fs::path& run_dir, const std::vector<CellRecord>& cells,
                           std::chrono::system_clock::time_point started,
                           std::chrono::system_clock::time_point finished) {
  ordered_json m;
  m["runId"] = run_dir.filename().string();
  m["inputsDigest"] = digest;
  m["startedAt"] = util::iso8601_utc(started);
  m["finishedAt"] = util::iso8601_utc(finished);
  m["config"] = config.to_json();
  m["cells"] = ordered_json::array();
  for (const auto& c : cells) {
    const auto& r = c.result;
    ordered_json cj;
    cj["caseStudy"] = r.case_study;
    cj["model"] = r.model;
    cj["strategy"] = prompting::to_string(r.strategy);
    cj["dir"] = r.dir.generic_string();
    cj["status"] = r.ok ? "ok" : "failed";
    if (!r.ok) {
      cj["failedStage"] = r.failed_stage;
      cj["error"] = r.error;
    }
    cj["aptcCount"] = r.aptc_count;
    cj["correctnessAutoCount"] = r.correctness_auto_count;
    cj["artifacts"] = ordered_json::array();
    for (const auto& a : c.artifacts) {
      cj["artifacts"].push_back({{"name", a.name}, {"path", a.path}, {"sha256", a.sha256}});
    }
    cj["timing"] = {{"startedAt", util::iso8601_utc(c.started)},
                    {"finishedAt", util::iso8601_utc(c.finished)},
                    {"latencyMs", c.latency_ms}};
    m["cells"].push_back(std::move(cj));
  }
  return m;
}

}  // namespace

std::size_t RunResult::failed_cells() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const CellResult& c) { return !c.ok; }));
}

std::string path_component(std::string_view label) {
  std::string out;
  for (char ch : label) {
    bool safe = (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') ||
                ch == '-' || ch == '.' || ch == '_';
    out.push_back(safe ? ch : '_');
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

RunResult run_pipeline(const RunConfig& config, const RunOptions& options) {
  config.validate();
  auto started = std::chrono::system_clock::now();
  const catalog::Catalog catalog =
      config.catalog_path ? catalog::Catalog::from_file(*config.catalog_path) : catalog::Catalog::bundled();

  std::vector<Architecture> archs;
  for (const auto& p : config.architecture_paths) {
    Architecture a;
    a.path = p;
    try {
      arch::LoadOptions lo;
      lo.lenient = config.lenient;
      a.model = arch::load_architecture_file(p, lo);
      serializer::SerializeOptions so;
      so.include_operations = config.include_operations;
      a.view = serializer::serialize_security_view(*a.model, so);
    } catch (const std::exception& e) {
      a.error = e.what();
    }
    archs.push_back(std::move(a));
  }
  std::set<std::string> names;
  for (const auto& a : archs) {
    if (a.model && !names.insert(a.model->name).second) {
      throw ConfigError("two architectures share the model name " + a.model->name);
    }
  }

  std::string digest = inputs_digest(config);
  RunResult result;
  result.inputs_digest = digest;
  result.run_dir = fresh_run_dir(config.output_dir, digest);

  auto transport = options.transport ? options.transport : llm::make_http_transport();
  llm::Gateway gateway(transport, options.sleeper);
  CellRunner runner(result.run_dir, config, catalog, gateway);

  struct Job {
    const Architecture* arch;
    const llm::ProviderConfig* provider;
    prompting::Strategy strategy;
  };
  std::vector<Job> jobs;
  for (const auto& a : archs) {
    for (const auto& p : config.providers) {
      for (auto s : config.strategies) jobs.push_back({&a, &p, s});
    }
  }

  std::vector<CellRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      records[i] = runner.run(*jobs[i].arch, *jobs[i].provider, jobs[i].strategy);
    }
  };
  int workers = std::max(1, std::min<int>(options.parallelism.value_or(config.parallelism),
                                          static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  auto manifest = manifest_json(config, digest, result.run_dir, records, started,
                                std::chrono::system_clock::now());
  util::write_file_atomic(result.run_dir / "manifest.json", manifest.dump(2) + "\n");
  for (auto& r : records) result.cells.push_back(std::move(r.result));
  return result;
}

std::vector<evaluation::ScoringItem> collect_scoring_items(const fs::path& run_dir) {
  auto manifest = nlohmann::json::parse(util::read_file(run_dir / "manifest.json"));
  std::vector<evaluation::ScoringItem> items;
  for (const auto& cell : manifest.at("cells")) {
    if (cell.at("status") != "ok") continue;
    fs::path dir = run_dir / cell.at("dir").get<std::string>();
    auto strategy = prompting::parse_strategy(cell.at("strategy").get<std::string>());
    if (!strategy) continue;
    auto batch = nlohmann::ordered_json::parse(util::read_file(dir / "aptcs.json"));
    auto reports = nlohmann::ordered_json::parse(util::read_file(dir / "validation.json"));
    std::string view = util::read_file(dir / "view.txt");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      auto weakness = weakness_of(nlohmann::json(batch[i]));
      if (!weakness || !seen.insert(*weakness).second) continue;
      evaluation::ScoringItem item;
      item.ref = {cell.at("model").get<std::string>(), *strategy,
                  cell.at("caseStudy").get<std::string>(), *weakness};
      item.aptc_text = batch[i].dump(2);
      item.report_text = i < reports.size() ? reports[i].dump(2) : "(no report)";
      item.architecture_text = view;
      items.push_back(std::move(item));
    }
  }
  return items;
}

}  // namespace aptc::pipeline
