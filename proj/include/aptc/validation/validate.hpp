#pragma once

#include "aptc/arch/model.hpp"
#include "aptc/catalog/catalog.hpp"
#include "aptc/core/pen_test_case.hpp"
#include "aptc/validation/findings.hpp"

#include <json.hpp>

#include <vector>

namespace aptc::validation {

struct ValidationOptions {
  /// Additionally require deployment linkage between entry and asset.
  bool strict_deployment = false;
  const PropertyTable* property_table = &bundled_property_table();
};

/// UnknownComponent per unknown step component, UnknownConnector for an
/// unknown connector, ConnectorMismatch when a known connector does not join
/// exactly the entry and asset components.
std::vector<Finding> check_grounding(const core::PenTestCase& aptc, const arch::ArchitectureModel& model);

/// InfeasibleVector when entry and asset differ and are not connected in the
/// component graph. Returns one FeasibilitySkipped info finding if either step
/// is not grounded.
std::vector<Finding> check_feasibility(const core::PenTestCase& aptc,
                                       const arch::ArchitectureModel& model,
                                       bool strict_deployment = false);

std::vector<Finding> check_weakness_set(const core::PenTestCase& aptc,
                                        const std::vector<catalog::CatalogEntry>& catalog);

/// Info-only heuristic; see PropertyExpectation.
std::vector<Finding> check_property_plausibility(
    const core::PenTestCase& aptc, const PropertyTable& table = bundled_property_table());

ValidationReport validate_case(const core::PenTestCase& aptc, const arch::ArchitectureModel& model,
                               const std::vector<catalog::CatalogEntry>& catalog,
                               const ValidationOptions& options = {});

/// One report per outcome, in order. Outcomes that failed to parse yield a
/// report holding only SchemaViolation findings, identified by
/// `fallback_ids[i]` when given, else "#<i>".
std::vector<ValidationReport> validate_batch(const std::vector<core::ParseOutcome>& cases,
                                             const arch::ArchitectureModel& model,
                                             const std::vector<catalog::CatalogEntry>& catalog,
                                             const ValidationOptions& options = {},
                                             const std::vector<std::string>& fallback_ids = {});

/// Parses each element of a JSON array (or a single object) and validates it.
std::vector<ValidationReport> validate_documents(const nlohmann::json& batch,
                                                 const arch::ArchitectureModel& model,
                                                 const std::vector<catalog::CatalogEntry>& catalog,
                                                 const ValidationOptions& options = {});

}  // namespace aptc::validation
