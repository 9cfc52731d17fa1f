#pragma once

#include <json.hpp>

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aptc::core {

enum class SecurityProperty { Confidentiality, Integrity, Availability, Authenticity };

std::string_view to_string(SecurityProperty p);
std::optional<SecurityProperty> parse_security_property(std::string_view s);

enum class Applicability { Applicable, Uncertain, NotApplicable };

std::string_view to_string(Applicability a);
std::optional<Applicability> parse_applicability(std::string_view s);

struct Threat {
  std::string name;
  bool operator==(const Threat&) const = default;
};

/// `id` is canonical ("CWE-863"). The wire format carries no weakness name,
/// so `name` stays empty unless filled from the catalog.
struct WeaknessRef {
  std::string id;
  std::string name;
  bool operator==(const WeaknessRef&) const = default;
};

struct AttackStep {
  std::string identifier;
  std::string executed_on;
  bool operator==(const AttackStep&) const = default;
};

/// Entry point and asset step; `connector` is set exactly when the two steps
/// run on different components.
struct AttackVector {
  std::string name;
  AttackStep entry_point;
  AttackStep asset;
  std::optional<std::string> connector;
  bool operator==(const AttackVector&) const = default;
};

struct PenTestCase {
  std::string identifier;
  std::set<SecurityProperty> violated_security_properties;
  Threat assessed_threat;
  std::vector<WeaknessRef> related_weaknesses;
  AttackVector used_attack_vector;
  Applicability applicability = Applicability::Applicable;
  std::optional<std::string> missing_information;

  bool operator==(const PenTestCase&) const = default;
};

struct SchemaIssue {
  enum class Code {
    WrongType,
    MissingKey,
    UnknownKey,
    EmptyValue,
    InvalidEnum,
    DuplicateProperty,
    MalformedWeaknessId,
    ConnectorForbidden,
    ConnectorRequired,
    MultiStepVector,
    MissingInformationRequired,
  };
  Code code;
  std::string path;  ///< JSON pointer into the APTC document
  std::string message;
};

std::string_view to_string(SchemaIssue::Code code);

class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(std::vector<SchemaIssue> issues);
  const std::vector<SchemaIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<SchemaIssue> issues_;
};

struct ParseOutcome {
  std::optional<PenTestCase> value;
  std::vector<SchemaIssue> issues;  ///< empty iff value is set
};

/// Maps one wire-format APTC object onto the metamodel, collecting every
/// violated constraint rather than stopping at the first.
ParseOutcome try_parse_aptc(const nlohmann::json& document);

/// Throws SchemaError with the complete issue list.
PenTestCase parse_aptc(const nlohmann::json& document);

/// Inverse of parse_aptc up to normalization. Wire key order; singleton
/// weakness and property sets are emitted as plain strings.
nlohmann::ordered_json emit_aptc(const PenTestCase& aptc);

/// Identifier used when a document carries no "id".
std::string synthesize_case_id(const std::vector<WeaknessRef>& weaknesses,
                               std::string_view attack_vector_name);

/// The versioned APTC JSON schema shipped at data/aptc.schema.json.
std::string_view aptc_json_schema_text();
const nlohmann::json& aptc_json_schema();

}  // namespace aptc::core
