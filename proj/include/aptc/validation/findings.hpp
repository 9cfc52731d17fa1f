#pragma once

#include "aptc/core/pen_test_case.hpp"

#include <json.hpp>

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace aptc::validation {

enum class FindingCode {
  SchemaViolation,
  UnknownComponent,
  UnknownConnector,
  ConnectorMismatch,
  InfeasibleVector,
  WeaknessOutOfSet,
  PropertyImplausible,
  FeasibilitySkipped,
};

enum class Severity { Error, Info };

/// Which ValidationReport flag a finding counts against. Advisory findings
/// never affect correctness.
enum class Category { Schema, Grounding, Feasibility, Weakness, Advisory };

std::string_view to_string(FindingCode c);
std::string_view to_string(Severity s);
Severity severity_of(FindingCode c);
Category category_of(FindingCode c);

struct Finding {
  FindingCode code;
  Severity severity;
  std::string message;
  std::string path;  ///< JSON pointer into the APTC document

  static Finding make(FindingCode code, std::string message, std::string path);
  bool operator==(const Finding&) const = default;
};

struct ValidationReport {
  std::string aptc_id;
  std::vector<Finding> findings;
  bool schema_ok = true;
  bool grounding_ok = true;
  bool feasibility_ok = true;
  bool weakness_ok = true;
  /// Conjunction of the four flags. Necessary for a correct APTC but not
  /// sufficient: whether it really targets the weakness is a human call.
  bool correctness_auto = true;

  /// Derives every flag from the error-severity findings.
  static ValidationReport from_findings(std::string aptc_id, std::vector<Finding> findings);

  nlohmann::ordered_json to_json() const;
  bool operator==(const ValidationReport&) const = default;
};

nlohmann::ordered_json reports_to_json(const std::vector<ValidationReport>& reports);

/// Weakness-to-property expectations backing the plausibility heuristic.
struct PropertyExpectation {
  std::string weakness;
  std::set<core::SecurityProperty> expected;
  /// Accepted only when the threat text names a component or connector of
  /// the attack vector.
  std::set<core::SecurityProperty> contextual;
};

using PropertyTable = std::vector<PropertyExpectation>;

PropertyTable property_table_from_json(const nlohmann::json& j);
const PropertyTable& bundled_property_table();

}  // namespace aptc::validation
