#include "aptc/validation/validate.hpp"
#include "aptc/serializer/security_view.hpp"

#include <algorithm>

namespace aptc::validation {

namespace {

using core::PenTestCase;

constexpr const char* kEntryPath = "/AttackVector/EntryPoint";
constexpr const char* kAssetPath = "/AttackVector/Asset";
constexpr const char* kConnectorPath = "/AttackVector/Connector";

}  // namespace

std::vector<Finding> check_grounding(const PenTestCase& aptc, const arch::ArchitectureModel& model) {
  std::vector<Finding> out;
  const auto& v = aptc.used_attack_vector;
  const auto& entry = v.entry_point.executed_on;
  const auto& asset = v.asset.executed_on;
  if (model.find_component(entry) == nullptr) {
    out.push_back(Finding::make(FindingCode::UnknownComponent,
                                "entry point component '" + entry + "' does not exist", kEntryPath));
  }
  if (model.find_component(asset) == nullptr) {
    out.push_back(Finding::make(FindingCode::UnknownComponent,
                                "asset component '" + asset + "' does not exist", kAssetPath));
  }
  if (v.connector) {
    const auto* c = model.find_connector(*v.connector);
    if (c == nullptr) {
      out.push_back(Finding::make(FindingCode::UnknownConnector,
                                  "connector '" + *v.connector + "' does not exist", kConnectorPath));
    } else {
      std::set<std::string> endpoints{c->from, c->to};
      std::set<std::string> wanted{entry, asset};
      if (endpoints != wanted) {
        out.push_back(Finding::make(FindingCode::ConnectorMismatch,
                                    "connector '" + c->name + "' joins '" + c->from + "' and '" +
                                        c->to + "', not '" + entry + "' and '" + asset + "'",
                                    kConnectorPath));
      }
    }
  }
  return out;
}

std::vector<Finding> check_feasibility(const PenTestCase& aptc, const arch::ArchitectureModel& model,
                                       bool strict_deployment) {
  const auto& entry = aptc.used_attack_vector.entry_point.executed_on;
  const auto& asset = aptc.used_attack_vector.asset.executed_on;
  if (model.find_component(entry) == nullptr || model.find_component(asset) == nullptr) {
    return {Finding::make(FindingCode::FeasibilitySkipped,
                          "feasibility not checked: attack steps are not grounded", "/AttackVector")};
  }
  if (entry == asset) return {};
  if (!arch::reachable(model, entry, asset)) {
    return {Finding::make(FindingCode::InfeasibleVector,
                          "no connector path from '" + entry + "' to '" + asset + "'",
                          "/AttackVector")};
  }
  if (strict_deployment) {
    if (model.find_allocation(entry) == nullptr || model.find_allocation(asset) == nullptr) {
      return {Finding::make(FindingCode::InfeasibleVector,
                            "'" + entry + "' or '" + asset + "' is not allocated to a container",
                            "/AttackVector")};
    }
    if (!arch::deployment_linked(model, entry, asset)) {
      return {Finding::make(FindingCode::InfeasibleVector,
                            "containers of '" + entry + "' and '" + asset +
                                "' share no linking resource",
                            "/AttackVector")};
    }
  }
  return {};
}

std::vector<Finding> check_weakness_set(const PenTestCase& aptc,
                                        const std::vector<catalog::CatalogEntry>& catalog) {
  std::vector<Finding> out;
  const auto& ws = aptc.related_weaknesses;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    bool known = std::any_of(catalog.begin(), catalog.end(),
                             [&](const catalog::CatalogEntry& e) { return e.id == ws[i].id; });
    if (!known) {
      out.push_back(Finding::make(FindingCode::WeaknessOutOfSet,
                                  ws[i].id + " is not in the allowed weakness set",
                                  ws.size() == 1 ? "/CAWE" : "/CAWE/" + std::to_string(i)));
    }
  }
  return out;
}

std::vector<Finding> check_property_plausibility(const PenTestCase& aptc, const PropertyTable& table) {
  std::vector<Finding> out;
  const auto& props = aptc.violated_security_properties;
  auto intersects = [&](const std::set<core::SecurityProperty>& s) {
    return std::any_of(props.begin(), props.end(), [&](auto p) { return s.contains(p); });
  };
  const auto& v = aptc.used_attack_vector;
  const auto& threat = aptc.assessed_threat.name;
  bool names_target = serializer::contains_identifier(threat, v.asset.executed_on) ||
                      serializer::contains_identifier(threat, v.entry_point.executed_on) ||
                      (v.connector && serializer::contains_identifier(threat, *v.connector));

  for (const auto& w : aptc.related_weaknesses) {
    auto it = std::find_if(table.begin(), table.end(),
                           [&](const PropertyExpectation& e) { return e.weakness == w.id; });
    if (it == table.end()) continue;
    if (intersects(it->expected)) continue;
    if (names_target && intersects(it->contextual)) continue;
    std::string expected;
    for (auto p : it->expected) {
      if (!expected.empty()) expected += "/";
      expected += core::to_string(p);
    }
    out.push_back(Finding::make(FindingCode::PropertyImplausible,
                                w.id + " usually violates " + expected +
                                    "; the stated properties do not match and the threat names no "
                                    "concrete target",
                                "/violatedSecurityProperty"));
  }
  return out;
}

ValidationReport validate_case(const PenTestCase& aptc, const arch::ArchitectureModel& model,
                               const std::vector<catalog::CatalogEntry>& catalog,
                               const ValidationOptions& options) {
  std::vector<Finding> findings = check_grounding(aptc, model);
  for (auto&& f : check_feasibility(aptc, model, options.strict_deployment)) findings.push_back(std::move(f));
  for (auto&& f : check_weakness_set(aptc, catalog)) findings.push_back(std::move(f));
  if (options.property_table != nullptr) {
    for (auto&& f : check_property_plausibility(aptc, *options.property_table)) {
      findings.push_back(std::move(f));
    }
  }
  return ValidationReport::from_findings(aptc.identifier, std::move(findings));
}

std::vector<ValidationReport> validate_batch(const std::vector<core::ParseOutcome>& cases,
                                             const arch::ArchitectureModel& model,
                                             const std::vector<catalog::CatalogEntry>& catalog,
                                             const ValidationOptions& options,
                                             const std::vector<std::string>& fallback_ids) {
  std::vector<ValidationReport> out;
  out.reserve(cases.size());
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    if (c.value) {
      out.push_back(validate_case(*c.value, model, catalog, options));
      continue;
    }
    std::vector<Finding> findings;
    for (const auto& issue : c.issues) {
      findings.push_back(Finding::make(FindingCode::SchemaViolation,
                                       std::string(core::to_string(issue.code)) + ": " + issue.message,
                                       issue.path));
    }
    std::string id = i < fallback_ids.size() && !fallback_ids[i].empty() ? fallback_ids[i]
                                                                          : "#" + std::to_string(i);
    out.push_back(ValidationReport::from_findings(std::move(id), std::move(findings)));
  }
  return out;
}

std::vector<ValidationReport> validate_documents(const nlohmann::json& batch,
                                                 const arch::ArchitectureModel& model,
                                                 const std::vector<catalog::CatalogEntry>& catalog,
                                                 const ValidationOptions& options) {
  std::vector<core::ParseOutcome> outcomes;
  std::vector<std::string> ids;
  auto add = [&](const nlohmann::json& doc) {
    outcomes.push_back(core::try_parse_aptc(doc));
    std::string id;
    if (doc.is_object() && doc.contains("id") && doc["id"].is_string()) id = doc["id"].get<std::string>();
    ids.push_back(id.empty() ? "#" + std::to_string(ids.size()) : id);
  };
  if (batch.is_array()) {
    for (const auto& doc : batch) add(doc);
  } else {
    add(batch);
  }
  return validate_batch(outcomes, model, catalog, options, ids);
}

}  // namespace aptc::validation
