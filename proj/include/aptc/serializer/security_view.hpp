#pragma once

#include "aptc/arch/model.hpp"

#include <set>
#include <string>
#include <string_view>

namespace aptc::serializer {

inline constexpr std::string_view kOverviewHeader = "## Overview";
inline constexpr std::string_view kInterfacesHeader = "## Interfaces and Dependencies";
inline constexpr std::string_view kResourceHeader = "## Resource Environment";

/// Security Analysis View: the linearized architecture text handed to the LLM.
/// Section bodies exclude their headers; full_text joins header and body of
/// each section in fixed order.
struct SecurityView {
  std::string model_name;
  std::string overview;
  std::string interfaces_and_dependencies;
  std::string resource_environment;
  std::string full_text;
};

struct SerializeOptions {
  bool include_operations = true;
};

/// Deterministic: elements are sorted by name within each section and every
/// identifier is copied verbatim.
SecurityView serialize_security_view(const arch::ArchitectureModel& model,
                                     const SerializeOptions& options = {});

struct IdentifierPartition {
  std::set<std::string> present;
  std::set<std::string> missing;
};

/// All component, connector, container, link and interface names of `model`.
std::set<std::string> model_identifiers(const arch::ArchitectureModel& model);

/// True if `identifier` occurs in `text` delimited by non-word characters
/// (word = [A-Za-z0-9_]), so "Machine" is not found inside "MachineTerminal".
bool contains_identifier(std::string_view text, std::string_view identifier);

IdentifierPartition extract_identifiers(const SecurityView& view,
                                        const arch::ArchitectureModel& model);

}  // namespace aptc::serializer
