// aptc: command-line front end for the APTC generation pipeline.

#include "aptc/arch/model.hpp"
#include "aptc/catalog/catalog.hpp"
#include "aptc/evaluation/metrics.hpp"
#include "aptc/evaluation/scoring_session.hpp"
#include "aptc/llm/extract_json.hpp"
#include "aptc/llm/gateway.hpp"
#include "aptc/pipeline/run.hpp"
#include "aptc/serializer/security_view.hpp"
#include "aptc/util/files.hpp"
#include "aptc/validation/validate.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>

namespace {

namespace fs = std::filesystem;
using namespace aptc;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitValidation = 2;

struct Globals {
  bool lenient = false;
  bool strict_deployment = false;
  bool no_operations = false;
  std::size_t shots = prompting::kDefaultShots;
  std::string unify;
  std::string catalog;
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    util::write_file_atomic(out, text);
  }
}

catalog::Catalog load_catalog(const Globals& g) {
  return g.catalog.empty() ? catalog::Catalog::bundled() : catalog::Catalog::from_file(g.catalog);
}

arch::ArchitectureModel load_arch(const std::string& path, const Globals& g) {
  arch::LoadOptions lo;
  lo.lenient = g.lenient;
  lo.on_warning = [](const std::string& w) { std::cerr << "warning: " << w << "\n"; };
  return arch::load_architecture_file(path, lo);
}

serializer::SecurityView view_of(const arch::ArchitectureModel& m, const Globals& g) {
  serializer::SerializeOptions so;
  so.include_operations = !g.no_operations;
  return serializer::serialize_security_view(m, so);
}

prompting::Strategy strategy_arg(const std::string& s) {
  auto parsed = prompting::parse_strategy(s);
  if (!parsed) throw CLI::ValidationError("--strategy", "unknown strategy '" + s + "'");
  return *parsed;
}

int cmd_serialize(const Globals& g, const std::string& arch_path, const std::string& out) {
  emit(view_of(load_arch(arch_path, g), g).full_text, out);
  return kExitOk;
}

struct GenerateArgs {
  std::string arch, strategy = "zero-shot", provider = "replay", model, fixtures, record,
                    response_file, endpoint, provider_model, out;
};

int cmd_generate(const Globals& g, const GenerateArgs& a) {
  auto model = load_arch(a.arch, g);
  auto view = view_of(model, g);
  auto catalog = load_catalog(g);
  auto strategy = strategy_arg(a.strategy);
  auto bundle = prompting::build_prompt(view, strategy, catalog.entries(),
                                        prompting::default_exemplars(strategy, g.shots), catalog);

  auto kind = llm::parse_provider_kind(a.provider);
  if (!kind) throw CLI::ValidationError("--provider", "unknown provider '" + a.provider + "'");
  auto config = llm::ProviderConfig::defaults_for(*kind, a.model);
  if (!a.fixtures.empty()) config.fixtures_path = a.fixtures;
  if (!a.endpoint.empty()) config.endpoint_url = a.endpoint;
  if (!a.provider_model.empty()) config.provider_model = a.provider_model;

  llm::GenerationRecord rec;
  if (!a.response_file.empty()) {
    rec.request_key = llm::request_key(bundle, a.model);
    rec.prompt_digest = llm::prompt_digest(bundle);
    rec.model_id = a.model;
    rec.strategy = prompting::to_string(strategy);
    rec.case_study = bundle.case_study;
    rec.weaknesses = bundle.target_weaknesses;
    rec.raw_response = util::read_file(a.response_file);
    rec.timestamp = std::chrono::system_clock::now();
  } else {
    rec = llm::generate(bundle, config);
  }
  if (!a.record.empty()) {
    auto path = llm::record_fixture(rec, a.record);
    std::cerr << "recorded " << path << "\n";
  }

  auto pick = strategy == prompting::Strategy::ChainOfThought ? llm::Pick::Last : llm::Pick::First;
  auto extracted = llm::extract_json(rec.raw_response, pick);
  nlohmann::ordered_json batch =
      extracted.is_array() ? extracted : nlohmann::ordered_json::array({extracted});
  emit(batch.dump(2) + "\n", a.out);
  std::cerr << "request key " << rec.request_key << ", " << batch.size() << " APTC(s)\n";
  return kExitOk;
}

int cmd_validate(const Globals& g, const std::string& arch_path, const std::string& aptcs,
                 const std::string& out) {
  auto model = load_arch(arch_path, g);
  auto catalog = load_catalog(g);
  auto batch = nlohmann::json::parse(util::read_file(aptcs));
  validation::ValidationOptions vo;
  vo.strict_deployment = g.strict_deployment;
  auto reports = validation::validate_documents(batch, model, catalog.entries(), vo);
  emit(validation::reports_to_json(reports).dump(2) + "\n", out);

  std::size_t ok = 0;
  for (const auto& r : reports) {
    ok += r.correctness_auto ? 1 : 0;
    std::cerr << (r.correctness_auto ? "ok    " : "FAIL  ") << r.aptc_id << "\n";
    for (const auto& f : r.findings) {
      std::cerr << "      " << validation::to_string(f.severity) << " "
                << validation::to_string(f.code) << " " << f.path << ": " << f.message << "\n";
    }
  }
  std::cerr << ok << "/" << reports.size() << " APTC(s) pass the automated checks\n";
  return ok == reports.size() ? kExitOk : kExitValidation;
}

int cmd_catalog(const Globals& g, bool as_json) {
  auto catalog = load_catalog(g);
  if (as_json) {
    std::cout << catalog.to_json().dump(2) << "\n";
  } else {
    for (const auto& e : catalog.entries()) std::cout << e.id << "\t" << e.name << "\n";
  }
  return kExitOk;
}

evaluation::UnifyRule unify_rule(const Globals& g, const evaluation::ScoreFile& file) {
  if (!g.unify.empty()) {
    auto r = evaluation::parse_unify_rule(g.unify);
    if (!r) throw CLI::ValidationError("--unify", "expected and, or or majority");
    return *r;
  }
  return file.declared_rule.value_or(evaluation::UnifyRule::And);
}

int cmd_report(const Globals& g, const std::string& scores, const std::string& format,
               const std::string& out) {
  auto fmt = evaluation::parse_table_format(format);
  if (!fmt) throw CLI::ValidationError("--format", "expected md, json or csv");
  auto catalog = load_catalog(g);
  evaluation::IngestOptions io;
  io.catalog = &catalog;
  auto file = evaluation::ingest_scores_file(scores, io);
  evaluation::AggregateOptions ao;
  ao.catalog = &catalog;
  auto table = evaluation::aggregate(evaluation::unify_scores(file.scores, unify_rule(g, file)), ao);
  for (const auto& w : table.warnings) std::cerr << "warning: " << w << "\n";
  emit(evaluation::render_table(table, *fmt), out);
  return kExitOk;
}

int cmd_score(const std::string& run_dir, const std::string& scores, const std::string& rater,
              const std::string& method) {
  auto m = evaluation::parse_method(method);
  if (!m) throw CLI::ValidationError("--method", "expected expert or llm-assisted");
  auto items = pipeline::collect_scoring_items(run_dir);
  evaluation::ScoringSession session(std::cin, std::cout, scores, rater, *m);
  session.run(items);
  return kExitOk;
}

int cmd_run(const Globals& g, const CLI::App& sub, const std::string& config_path,
            std::optional<int> parallelism) {
  auto config = pipeline::RunConfig::from_file(config_path);
  const auto& root = *sub.get_parent();
  if (root.count("--lenient") > 0) config.lenient = true;
  if (root.count("--strict-deployment") > 0) config.strict_deployment = true;
  if (root.count("--no-operations") > 0) config.include_operations = false;
  if (root.count("--shots") > 0) config.shots = g.shots;
  config.validate();
  pipeline::RunOptions ro;
  ro.parallelism = parallelism;
  auto result = pipeline::run_pipeline(config, ro);
  std::size_t cases = 0, ok = 0;
  for (const auto& c : result.cells) {
    std::cerr << (c.ok ? "ok     " : "failed ") << c.dir.generic_string();
    if (c.ok) {
      std::cerr << "  " << c.correctness_auto_count << "/" << c.aptc_count << " pass\n";
    } else {
      std::cerr << "  [" << c.failed_stage << "] " << c.error << "\n";
    }
    cases += c.aptc_count;
    ok += c.correctness_auto_count;
  }
  std::cout << result.run_dir.string() << "\n";
  if (result.failed_cells() > 0) return kExitError;
  return ok == cases ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Abstract penetration test case generation from architecture models"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_flag("--lenient", g.lenient, "Downgrade unknown architecture keys to warnings");
  app.add_flag("--strict-deployment", g.strict_deployment,
               "Also require deployment linkage between entry point and asset");
  app.add_flag("--no-operations", g.no_operations, "Omit interface operations from the view");
  app.add_option("--shots", g.shots, "Exemplars used by few-shot prompting")->check(CLI::Range(2, 64));
  app.add_option("--unify", g.unify, "Score unification rule: and, or, majority");
  app.add_option("--catalog", g.catalog, "Weakness catalog JSON (bundled when omitted)");

  std::string arch, out, aptcs, scores, format = "md", config, run_dir, rater, method = "expert";
  std::optional<int> parallelism;
  bool catalog_json = false;

  auto* serialize = app.add_subcommand("serialize", "Print the Security Analysis View");
  serialize->add_option("arch", arch, "Architecture JSON")->required();
  serialize->add_option("--out", out);

  GenerateArgs ga;
  auto* generate = app.add_subcommand("generate", "Generate APTCs for one architecture");
  generate->add_option("--arch", ga.arch)->required();
  generate->add_option("--strategy", ga.strategy);
  generate->add_option("--provider", ga.provider, "openai-compatible, gemini or replay");
  generate->add_option("--model", ga.model, "Model label, e.g. GPT-5.2")->required();
  generate->add_option("--provider-model", ga.provider_model, "Model string sent to the provider");
  generate->add_option("--endpoint", ga.endpoint);
  generate->add_option("--fixtures", ga.fixtures, "Replay fixture directory");
  generate->add_option("--record", ga.record, "Store the response as a replay fixture");
  generate->add_option("--response-file", ga.response_file,
                       "Use this file as the model response instead of calling a provider");
  generate->add_option("--out", ga.out);

  auto* validate = app.add_subcommand("validate", "Validate an APTC batch against an architecture");
  validate->add_option("--arch", arch)->required();
  validate->add_option("--aptcs", aptcs)->required();
  validate->add_option("--out", out);

  auto* catalog = app.add_subcommand("catalog", "Weakness catalog");
  auto* catalog_list = catalog->add_subcommand("list", "List catalog entries");
  catalog_list->add_flag("--json", catalog_json);
  catalog->require_subcommand(1);

  auto* score = app.add_subcommand("score", "Score the APTCs of a run interactively");
  score->add_option("--run", run_dir)->required();
  score->add_option("--scores", scores)->required();
  score->add_option("--rater", rater)->required();
  score->add_option("--method", method, "expert or llm-assisted");

  auto* report = app.add_subcommand("report", "Aggregate scores into the evaluation table");
  report->add_option("--scores", scores)->required();
  report->add_option("--format", format, "md, json or csv");
  report->add_option("--out", out);

  auto* run = app.add_subcommand("run", "Run the full pipeline from a config file");
  run->add_option("--config", config)->required();
  run->add_option("--parallelism", parallelism)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*serialize) return cmd_serialize(g, arch, out);
    if (*generate) return cmd_generate(g, ga);
    if (*validate) return cmd_validate(g, arch, aptcs, out);
    if (*catalog) return cmd_catalog(g, catalog_json);
    if (*score) return cmd_score(run_dir, scores, rater, method);
    if (*report) return cmd_report(g, scores, format, out);
    if (*run) return cmd_run(g, *run, config, parallelism);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
