#pragma once

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aptc::catalog {

struct CatalogEntry {
  std::string id;  ///< canonical CWE-<n>
  std::string name;
  std::string summary;

  bool operator==(const CatalogEntry&) const = default;
};

/// Ordered, closed set of weaknesses that generation may target and
/// validation accepts.
class Catalog {
 public:
  /// Entries in file order; ids are normalized and must be unique.
  static Catalog from_json(const nlohmann::json& entries);
  static Catalog from_file(const std::filesystem::path& path);
  /// The five authorization/access-control weaknesses shipped in data/.
  static const Catalog& bundled();

  const std::vector<CatalogEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Throws core::MalformedWeaknessId for ids that do not normalize.
  std::optional<CatalogEntry> lookup(std::string_view id) const;
  bool contains(std::string_view canonical_id) const;

  nlohmann::ordered_json to_json() const;

 private:
  std::vector<CatalogEntry> entries_;
};

/// Bundled entries in their canonical order.
const std::vector<CatalogEntry>& allowed_weaknesses();

}  // namespace aptc::catalog
