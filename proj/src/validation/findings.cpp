#include "aptc/validation/findings.hpp"
#include "aptc/core/weakness_id.hpp"
#include "aptc/util/embedded.hpp"

#include <stdexcept>

namespace aptc::validation {

std::string_view to_string(FindingCode c) {
  switch (c) {
    case FindingCode::SchemaViolation: return "SchemaViolation";
    case FindingCode::UnknownComponent: return "UnknownComponent";
    case FindingCode::UnknownConnector: return "UnknownConnector";
    case FindingCode::ConnectorMismatch: return "ConnectorMismatch";
    case FindingCode::InfeasibleVector: return "InfeasibleVector";
    case FindingCode::WeaknessOutOfSet: return "WeaknessOutOfSet";
    case FindingCode::PropertyImplausible: return "PropertyImplausible";
    case FindingCode::FeasibilitySkipped: return "FeasibilitySkipped";
  }
  return "?";
}

std::string_view to_string(Severity s) { return s == Severity::Error ? "error" : "info"; }

Severity severity_of(FindingCode c) {
  return c == FindingCode::PropertyImplausible || c == FindingCode::FeasibilitySkipped
             ? Severity::Info
             : Severity::Error;
}

Category category_of(FindingCode c) {
  switch (c) {
    case FindingCode::SchemaViolation: return Category::Schema;
    case FindingCode::UnknownComponent:
    case FindingCode::UnknownConnector:
    case FindingCode::ConnectorMismatch: return Category::Grounding;
    case FindingCode::InfeasibleVector: return Category::Feasibility;
    case FindingCode::WeaknessOutOfSet: return Category::Weakness;
    case FindingCode::PropertyImplausible:
    case FindingCode::FeasibilitySkipped: return Category::Advisory;
  }
  return Category::Advisory;
}

Finding Finding::make(FindingCode code, std::string message, std::string path) {
  return {code, severity_of(code), std::move(message), std::move(path)};
}

ValidationReport ValidationReport::from_findings(std::string aptc_id, std::vector<Finding> findings) {
  ValidationReport r;
  r.aptc_id = std::move(aptc_id);
  r.findings = std::move(findings);
  for (const auto& f : r.findings) {
    if (f.severity != Severity::Error) continue;
    switch (category_of(f.code)) {
      case Category::Schema: r.schema_ok = false; break;
      case Category::Grounding: r.grounding_ok = false; break;
      case Category::Feasibility: r.feasibility_ok = false; break;
      case Category::Weakness: r.weakness_ok = false; break;
      case Category::Advisory: break;
    }
  }
  r.correctness_auto = r.schema_ok && r.grounding_ok && r.feasibility_ok && r.weakness_ok;
  return r;
}

nlohmann::ordered_json ValidationReport::to_json() const {
  nlohmann::ordered_json j;
  j["aptcId"] = aptc_id;
  j["schemaOk"] = schema_ok;
  j["groundingOk"] = grounding_ok;
  j["feasibilityOk"] = feasibility_ok;
  j["weaknessOk"] = weakness_ok;
  j["correctnessAuto"] = correctness_auto;
  j["findings"] = nlohmann::ordered_json::array();
  for (const auto& f : findings) {
    j["findings"].push_back({{"code", to_string(f.code)},
                             {"severity", to_string(f.severity)},
                             {"message", f.message},
                             {"path", f.path}});
  }
  return j;
}

nlohmann::ordered_json reports_to_json(const std::vector<ValidationReport>& reports) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& r : reports) out.push_back(r.to_json());
  return out;
}

PropertyTable property_table_from_json(const nlohmann::json& j) {
  auto props = [](const nlohmann::json& arr) {
    std::set<core::SecurityProperty> out;
    for (const auto& v : arr) {
      auto p = core::parse_security_property(v.get<std::string>());
      if (!p) throw std::invalid_argument("unknown security property " + v.dump());
      out.insert(*p);
    }
    return out;
  };
  PropertyTable table;
  for (const auto& e : j) {
    table.push_back({core::normalize_weakness_id(e.at("weakness").get<std::string>()),
                     props(e.at("expected")),
                     props(e.value("contextual", nlohmann::json::array()))});
  }
  return table;
}

const PropertyTable& bundled_property_table() {
  static const PropertyTable t = property_table_from_json(nlohmann::json::parse(embedded::property_table()));
  return t;
}

}  // namespace aptc::validation
