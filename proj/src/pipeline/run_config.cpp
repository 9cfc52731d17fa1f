#include "aptc/pipeline/run.hpp"
#include "aptc/util/digest.hpp"
#include "aptc/util/files.hpp"

#include <set>

namespace aptc::pipeline {

namespace fs = std::filesystem;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  if (path.is_relative() && !base.empty()) path = base / path;
  return path.lexically_normal();
}

}  // namespace

void RunConfig::validate() const {
  if (architecture_paths.empty()) throw ConfigError("run config needs at least one architecture");
  if (strategies.empty()) throw ConfigError("run config needs at least one strategy");
  if (providers.empty()) throw ConfigError("run config needs at least one provider");
  if (parallelism < 1) throw ConfigError("parallelism must be at least 1");
  for (const auto& p : providers) {
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  for (std::size_t i = 0; i < providers.size(); ++i) {
    for (std::size_t k = i + 1; k < providers.size(); ++k) {
      if (providers[i].model_id == providers[k].model_id) {
        throw ConfigError("duplicate provider model id " + providers[i].model_id);
      }
    }
  }
}

RunConfig RunConfig::from_json(const nlohmann::json& j, const fs::path& base_dir) {
  static const std::set<std::string> known{"architectures", "providers", "strategies", "catalog",
                                           "outputDir", "parallelism", "shots",
                                           "strictDeployment", "lenient", "includeOperations"};
  if (!j.is_object()) throw ConfigError("run config must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (known.count(k) == 0) throw ConfigError("unknown run config key '" + k + "'");
  }
  RunConfig c;
  try {
    for (const auto& a : j.at("architectures")) {
      c.architecture_paths.push_back(resolve(base_dir, a.get<std::string>()));
    }
    for (auto p : j.at("providers")) {
      if (p.contains("fixturesPath")) {
        p["fixturesPath"] = resolve(base_dir, p.at("fixturesPath").get<std::string>()).string();
      }
      c.providers.push_back(llm::ProviderConfig::from_json(p));
    }
    for (const auto& s : j.at("strategies")) {
      auto parsed = prompting::parse_strategy(s.get<std::string>());
      if (!parsed) throw ConfigError("unknown strategy " + s.dump());
      c.strategies.push_back(*parsed);
    }
    if (j.contains("catalog")) c.catalog_path = resolve(base_dir, j.at("catalog").get<std::string>());
    if (j.contains("outputDir")) c.output_dir = resolve(base_dir, j.at("outputDir").get<std::string>());
    else c.output_dir = resolve(base_dir, "runs");
    c.parallelism = j.value("parallelism", c.parallelism);
    c.shots = j.value("shots", c.shots);
    c.strict_deployment = j.value("strictDeployment", c.strict_deployment);
    c.lenient = j.value("lenient", c.lenient);
    c.include_operations = j.value("includeOperations", c.include_operations);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed run config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  c.validate();
  return c;
}

RunConfig RunConfig::from_file(const fs::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(util::read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return from_json(j, path.parent_path());
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["architectures"] = nlohmann::ordered_json::array();
  for (const auto& a : architecture_paths) j["architectures"].push_back(a.string());
  j["providers"] = nlohmann::ordered_json::array();
  for (const auto& p : providers) j["providers"].push_back(p.to_json());
  j["strategies"] = nlohmann::ordered_json::array();
  for (auto s : strategies) j["strategies"].push_back(prompting::to_string(s));
  if (catalog_path) j["catalog"] = catalog_path->string();
  j["outputDir"] = output_dir.string();
  j["parallelism"] = parallelism;
  j["shots"] = shots;
  j["strictDeployment"] = strict_deployment;
  j["lenient"] = lenient;
  j["includeOperations"] = include_operations;
  return j;
}

std::string inputs_digest(const RunConfig& config) {
  util::FieldHasher h;
  h.add("architectures");
  for (const auto& a : config.architecture_paths) {
    try {
      h.add("file").add(util::read_file(a));
    } catch (const util::IoError&) {
      h.add("unreadable").add(a.generic_string());
    }
  }
  h.add("catalog").add(config.catalog_path ? util::read_file(*config.catalog_path) : "bundled");
  h.add("providers");
  for (const auto& p : config.providers) {
    auto j = p.to_json();
    j.erase("fixturesPath");
    h.add(j.dump());
  }
  h.add("strategies");
  for (auto s : config.strategies) h.add(prompting::to_string(s));
  h.add(std::to_string(config.shots))
      .add(config.strict_deployment ? "strict" : "relaxed")
      .add(config.lenient ? "lenient" : "exact")
      .add(config.include_operations ? "ops" : "no-ops");
  return h.hex();
}

}  // namespace aptc::pipeline
