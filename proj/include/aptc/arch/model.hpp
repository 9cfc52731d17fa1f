#pragma once

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aptc::arch {

struct Component {
  std::string name;
  std::vector<std::string> provides;
  std::vector<std::string> requires_;
  std::optional<std::string> asset_note;

  bool operator==(const Component&) const = default;
};

struct InterfaceDef {
  std::string name;
  std::vector<std::string> operations;

  bool operator==(const InterfaceDef&) const = default;
};

/// Assembly connector. `from` is the requiring side, `to` the providing side.
struct Connector {
  std::string name;
  std::string from;
  std::string to;
  std::string interface;

  bool operator==(const Connector&) const = default;
};

struct ResourceContainer {
  std::string name;

  bool operator==(const ResourceContainer&) const = default;
};

struct LinkingResource {
  std::string name;
  std::vector<std::string> containers;

  bool operator==(const LinkingResource&) const = default;
};

struct Allocation {
  std::string component;
  std::string container;

  bool operator==(const Allocation&) const = default;
};

/// Repository, system, resource-environment and allocation views of one
/// component-based architecture. Only constructed through load_architecture,
/// which enforces every referential invariant, and treated as immutable.
struct ArchitectureModel {
  std::string name;
  std::vector<Component> components;
  std::vector<InterfaceDef> interfaces;
  std::vector<Connector> connectors;
  std::vector<ResourceContainer> containers;
  std::vector<LinkingResource> links;
  std::vector<Allocation> allocations;

  const Component* find_component(std::string_view n) const;
  const Connector* find_connector(std::string_view n) const;
  const Allocation* find_allocation(std::string_view component) const;

  bool operator==(const ArchitectureModel&) const = default;
};

/// Base for load failures. `location` is a JSON pointer into the document
/// ("" for document-level problems).
class ArchError : public std::runtime_error {
 public:
  ArchError(const std::string& what, std::string location)
      : std::runtime_error(location.empty() ? what : location + ": " + what),
        location_(std::move(location)) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

/// Malformed document: bad JSON, wrong value types, missing keys.
class ParseError : public ArchError {
 public:
  using ArchError::ArchError;
};

/// Well-formed document that violates a model invariant.
class IntegrityError : public ArchError {
 public:
  using ArchError::ArchError;
};

class QueryError : public std::runtime_error {
 public:
  enum class Kind { UnknownComponent, UnallocatedComponent };
  QueryError(Kind kind, const std::string& component);
  Kind kind() const noexcept { return kind_; }
  const std::string& component() const noexcept { return component_; }

 private:
  Kind kind_;
  std::string component_;
};

struct LoadOptions {
  /// Unknown keys become warnings instead of IntegrityError.
  bool lenient = false;
  std::function<void(const std::string&)> on_warning;
};

ArchitectureModel load_architecture(std::string_view json_text, const LoadOptions& options = {});
ArchitectureModel load_architecture(const nlohmann::json& document, const LoadOptions& options = {});
ArchitectureModel load_architecture_file(const std::filesystem::path& path,
                                         const LoadOptions& options = {});

/// Canonical document for `model`; load_architecture(emit_architecture(m)) == m.
nlohmann::ordered_json emit_architecture(const ArchitectureModel& model);

std::set<std::string> component_names(const ArchitectureModel& model);

/// Connector joining `a` and `b` in either direction. With several candidates
/// the lexicographically smallest connector name wins.
std::optional<Connector> directly_connected(const ArchitectureModel& model, std::string_view a,
                                            std::string_view b);

/// Path existence in the undirected component graph whose edges are
/// connectors. Every component reaches itself.
bool reachable(const ArchitectureModel& model, std::string_view a, std::string_view b);

/// Same container, or containers that share a linking resource.
bool deployment_linked(const ArchitectureModel& model, std::string_view a, std::string_view b);

}  // namespace aptc::arch
