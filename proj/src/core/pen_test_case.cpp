#include "aptc/core/pen_test_case.hpp"
#include "aptc/core/weakness_id.hpp"
#include "aptc/util/digest.hpp"
#include "aptc/util/embedded.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace aptc::core {

namespace {

using nlohmann::json;
using Code = SchemaIssue::Code;

constexpr std::array<std::pair<SecurityProperty, std::string_view>, 4> kProperties{{
    {SecurityProperty::Confidentiality, "Confidentiality"},
    {SecurityProperty::Integrity, "Integrity"},
    {SecurityProperty::Availability, "Availability"},
    {SecurityProperty::Authenticity, "Authenticity"},
}};

constexpr std::array<std::pair<Applicability, std::string_view>, 3> kApplicability{{
    {Applicability::Applicable, "applicable"},
    {Applicability::Uncertain, "uncertain"},
    {Applicability::NotApplicable, "not_applicable"},
}};

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\n\v\f\r") == std::string_view::npos;
}

bool mentions_step(std::string_view key) {
  std::string lower;
  for (char ch : key) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  return lower.find("step") != std::string::npos;
}

class CaseParser {
 public:
  ParseOutcome run(const json& doc) {
    if (!doc.is_object()) {
      add(Code::WrongType, "", "APTC must be a JSON object");
      return finish();
    }
    for (const auto& [key, value] : doc.items()) {
      static constexpr std::array<std::string_view, 7> kKnown{
          "CAWE", "violatedSecurityProperty", "Threat", "AttackVector",
          "id",   "applicability",            "missingInformation"};
      if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) {
        add(Code::UnknownKey, "/" + key, "unknown key '" + key + "'");
      }
    }
    parse_weaknesses(doc);
    parse_properties(doc);
    parse_threat(doc);
    parse_vector(doc);
    parse_extensions(doc);
    return finish();
  }

 private:
  void add(Code code, std::string path, std::string message) {
    issues_.push_back({code, std::move(path), std::move(message)});
  }

  std::optional<std::string> non_blank(const json& doc, std::string_view key,
                                       const std::string& path) {
    const auto& v = doc.at(key);
    if (!v.is_string()) {
      add(Code::WrongType, path, "'" + std::string(key) + "' must be a string");
      return std::nullopt;
    }
    auto s = v.get<std::string>();
    if (is_blank(s)) {
      add(Code::EmptyValue, path, "'" + std::string(key) + "' must not be empty");
      return std::nullopt;
    }
    return s;
  }

  void weakness(const json& v, const std::string& path) {
    if (!v.is_string()) {
      add(Code::WrongType, path, "weakness id must be a string");
      return;
    }
    auto id = try_normalize_weakness_id(v.get<std::string>());
    if (!id) {
      add(Code::MalformedWeaknessId, path, "malformed weakness id '" + v.get<std::string>() + "'");
      return;
    }
    case_.related_weaknesses.push_back({*id, ""});
  }

  void parse_weaknesses(const json& doc) {
    if (!doc.contains("CAWE")) {
      add(Code::MissingKey, "", "missing key 'CAWE'");
      return;
    }
    const auto& v = doc.at("CAWE");
    if (v.is_array()) {
      if (v.empty()) add(Code::EmptyValue, "/CAWE", "at least one weakness is required");
      for (std::size_t i = 0; i < v.size(); ++i) weakness(v[i], "/CAWE/" + std::to_string(i));
    } else {
      weakness(v, "/CAWE");
    }
  }

  void property(const json& v, const std::string& path) {
    if (!v.is_string()) {
      add(Code::WrongType, path, "security property must be a string");
      return;
    }
    auto p = parse_security_property(v.get<std::string>());
    if (!p) {
      add(Code::InvalidEnum, path,
          "invalid security property '" + v.get<std::string>() +
              "' (expected Confidentiality, Integrity, Availability or Authenticity)");
      return;
    }
    if (!case_.violated_security_properties.insert(*p).second) {
      add(Code::DuplicateProperty, path, "duplicate security property '" + v.get<std::string>() + "'");
    }
  }

  void parse_properties(const json& doc) {
    if (!doc.contains("violatedSecurityProperty")) {
      add(Code::MissingKey, "", "missing key 'violatedSecurityProperty'");
      return;
    }
    const auto& v = doc.at("violatedSecurityProperty");
    if (v.is_array()) {
      if (v.empty()) {
        add(Code::EmptyValue, "/violatedSecurityProperty", "at least one property is required");
      }
      for (std::size_t i = 0; i < v.size(); ++i) {
        property(v[i], "/violatedSecurityProperty/" + std::to_string(i));
      }
    } else {
      property(v, "/violatedSecurityProperty");
    }
  }

  void parse_threat(const json& doc) {
    if (!doc.contains("Threat")) {
      add(Code::MissingKey, "", "missing key 'Threat'");
      return;
    }
    if (auto s = non_blank(doc, "Threat", "/Threat")) case_.assessed_threat.name = *s;
  }

  void parse_vector(const json& doc) {
    if (!doc.contains("AttackVector")) {
      add(Code::MissingKey, "", "missing key 'AttackVector'");
      return;
    }
    const auto& av = doc.at("AttackVector");
    if (!av.is_object()) {
      add(Code::WrongType, "/AttackVector", "'AttackVector' must be an object");
      return;
    }
    for (const auto& [key, value] : av.items()) {
      if (key == "Name" || key == "Connector" || key == "EntryPoint" || key == "Asset") continue;
      if (mentions_step(key)) {
        add(Code::MultiStepVector, "/AttackVector/" + key,
            "multi-step attack vectors are not supported; only EntryPoint and Asset");
      } else {
        add(Code::UnknownKey, "/AttackVector/" + key, "unknown key '" + key + "'");
      }
    }
    auto& vec = case_.used_attack_vector;
    std::optional<std::string> entry, asset;
    for (std::string_view key : {"Name", "EntryPoint", "Asset"}) {
      auto path = "/AttackVector/" + std::string(key);
      if (!av.contains(key)) {
        add(Code::MissingKey, "/AttackVector", "missing key '" + std::string(key) + "'");
        continue;
      }
      auto s = non_blank(av, key, path);
      if (!s) continue;
      if (key == "Name") vec.name = *s;
      else if (key == "EntryPoint") entry = s;
      else asset = s;
    }
    if (av.contains("Connector")) {
      if (auto s = non_blank(av, "Connector", "/AttackVector/Connector")) vec.connector = s;
    }
    if (entry) vec.entry_point.executed_on = *entry;
    if (asset) vec.asset.executed_on = *asset;
    if (entry && asset) {
      bool has_connector = av.contains("Connector");
      if (*entry == *asset && has_connector) {
        add(Code::ConnectorForbidden, "/AttackVector/Connector",
            "connector given although EntryPoint and Asset are the same component");
      } else if (*entry != *asset && !has_connector) {
        add(Code::ConnectorRequired, "/AttackVector",
            "EntryPoint and Asset differ, so a Connector is required");
      }
    }
  }

  void parse_extensions(const json& doc) {
    if (doc.contains("id")) {
      if (auto s = non_blank(doc, "id", "/id")) case_.identifier = *s;
    }
    if (doc.contains("applicability")) {
      const auto& v = doc.at("applicability");
      std::optional<Applicability> a;
      if (v.is_string()) a = parse_applicability(v.get<std::string>());
      if (a) {
        case_.applicability = *a;
      } else {
        add(Code::InvalidEnum, "/applicability",
            "applicability must be one of applicable, uncertain, not_applicable");
      }
    }
    if (doc.contains("missingInformation")) {
      const auto& v = doc.at("missingInformation");
      if (v.is_string()) case_.missing_information = v.get<std::string>();
      else add(Code::WrongType, "/missingInformation", "'missingInformation' must be a string");
    }
    if (case_.applicability != Applicability::Applicable &&
        (!case_.missing_information || is_blank(*case_.missing_information))) {
      add(Code::MissingInformationRequired, "/missingInformation",
          "applicability '" + std::string(to_string(case_.applicability)) +
              "' requires a non-empty missingInformation");
    }
  }

  ParseOutcome finish() {
    ParseOutcome out;
    if (!issues_.empty()) {
      out.issues = std::move(issues_);
      return out;
    }
    if (case_.identifier.empty()) {
      case_.identifier =
          synthesize_case_id(case_.related_weaknesses, case_.used_attack_vector.name);
    }
    case_.used_attack_vector.entry_point.identifier = case_.identifier + "/entry";
    case_.used_attack_vector.asset.identifier = case_.identifier + "/asset";
    out.value = std::move(case_);
    return out;
  }

  PenTestCase case_;
  std::vector<SchemaIssue> issues_;
};

std::string join_messages(const std::vector<SchemaIssue>& issues) {
  std::string out = "APTC schema violations:";
  for (const auto& i : issues) {
    out += "\n  " + (i.path.empty() ? std::string("/") : i.path) + ": " + i.message;
  }
  return out;
}

}  // namespace

std::string_view to_string(SecurityProperty p) {
  for (const auto& [value, name] : kProperties) {
    if (value == p) return name;
  }
  return "?";
}

std::optional<SecurityProperty> parse_security_property(std::string_view s) {
  for (const auto& [value, name] : kProperties) {
    if (name == s) return value;
  }
  return std::nullopt;
}

std::string_view to_string(Applicability a) {
  for (const auto& [value, name] : kApplicability) {
    if (value == a) return name;
  }
  return "?";
}

std::optional<Applicability> parse_applicability(std::string_view s) {
  for (const auto& [value, name] : kApplicability) {
    if (name == s) return value;
  }
  return std::nullopt;
}

std::string_view to_string(SchemaIssue::Code code) {
  switch (code) {
    case Code::WrongType: return "WrongType";
    case Code::MissingKey: return "MissingKey";
    case Code::UnknownKey: return "UnknownKey";
    case Code::EmptyValue: return "EmptyValue";
    case Code::InvalidEnum: return "InvalidEnum";
    case Code::DuplicateProperty: return "DuplicateProperty";
    case Code::MalformedWeaknessId: return "MalformedWeaknessId";
    case Code::ConnectorForbidden: return "ConnectorForbidden";
    case Code::ConnectorRequired: return "ConnectorRequired";
    case Code::MultiStepVector: return "MultiStepVector";
    case Code::MissingInformationRequired: return "MissingInformationRequired";
  }
  return "?";
}

SchemaError::SchemaError(std::vector<SchemaIssue> issues)
    : std::runtime_error(join_messages(issues)), issues_(std::move(issues)) {}

ParseOutcome try_parse_aptc(const nlohmann::json& document) {
  return CaseParser{}.run(document);
}

PenTestCase parse_aptc(const nlohmann::json& document) {
  auto outcome = try_parse_aptc(document);
  if (!outcome.value) throw SchemaError(std::move(outcome.issues));
  return std::move(*outcome.value);
}

nlohmann::ordered_json emit_aptc(const PenTestCase& aptc) {
  using oj = nlohmann::ordered_json;
  oj doc;
  if (aptc.related_weaknesses.size() == 1) {
    doc["CAWE"] = aptc.related_weaknesses.front().id;
  } else {
    doc["CAWE"] = oj::array();
    for (const auto& w : aptc.related_weaknesses) doc["CAWE"].push_back(w.id);
  }
  if (aptc.violated_security_properties.size() == 1) {
    doc["violatedSecurityProperty"] = to_string(*aptc.violated_security_properties.begin());
  } else {
    doc["violatedSecurityProperty"] = oj::array();
    for (auto p : aptc.violated_security_properties) {
      doc["violatedSecurityProperty"].push_back(to_string(p));
    }
  }
  doc["Threat"] = aptc.assessed_threat.name;
  const auto& v = aptc.used_attack_vector;
  oj vec;
  vec["Name"] = v.name;
  if (v.connector) vec["Connector"] = *v.connector;
  vec["EntryPoint"] = v.entry_point.executed_on;
  vec["Asset"] = v.asset.executed_on;
  doc["AttackVector"] = std::move(vec);
  doc["id"] = aptc.identifier;
  if (aptc.applicability != Applicability::Applicable) {
    doc["applicability"] = to_string(aptc.applicability);
  }
  if (aptc.missing_information) doc["missingInformation"] = *aptc.missing_information;
  return doc;
}

std::string synthesize_case_id(const std::vector<WeaknessRef>& weaknesses,
                               std::string_view attack_vector_name) {
  util::FieldHasher h;
  std::vector<std::string> ids;
  for (const auto& w : weaknesses) ids.push_back(w.id);
  h.add(ids).add(attack_vector_name);
  std::string lead = ids.empty() ? "APTC" : ids.front();
  return lead + "-" + h.hex().substr(0, 10);
}

std::string_view aptc_json_schema_text() { return embedded::aptc_schema(); }

const nlohmann::json& aptc_json_schema() {
  static const nlohmann::json schema = nlohmann::json::parse(aptc_json_schema_text());
  return schema;
}

}  // namespace aptc::core
