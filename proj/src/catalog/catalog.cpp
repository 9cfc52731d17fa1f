#include "aptc/catalog/catalog.hpp"
#include "aptc/core/weakness_id.hpp"
#include "aptc/util/embedded.hpp"
#include "aptc/util/files.hpp"

#include <set>
#include <stdexcept>

namespace aptc::catalog {

Catalog Catalog::from_json(const nlohmann::json& entries) {
  if (!entries.is_array()) throw std::invalid_argument("catalog must be a JSON array");
  Catalog c;
  std::set<std::string> seen;
  for (const auto& e : entries) {
    CatalogEntry entry{core::normalize_weakness_id(e.at("id").get<std::string>()),
                       e.at("name").get<std::string>(), e.value("summary", std::string{})};
    if (!seen.insert(entry.id).second) {
      throw std::invalid_argument("duplicate catalog id " + entry.id);
    }
    c.entries_.push_back(std::move(entry));
  }
  return c;
}

Catalog Catalog::from_file(const std::filesystem::path& path) {
  return from_json(nlohmann::json::parse(util::read_file(path)));
}

const Catalog& Catalog::bundled() {
  static const Catalog c = from_json(nlohmann::json::parse(embedded::cawe_catalog()));
  return c;
}

std::optional<CatalogEntry> Catalog::lookup(std::string_view id) const {
  auto canonical = core::normalize_weakness_id(id);
  for (const auto& e : entries_) {
    if (e.id == canonical) return e;
  }
  return std::nullopt;
}

bool Catalog::contains(std::string_view canonical_id) const {
  for (const auto& e : entries_) {
    if (e.id == canonical_id) return true;
  }
  return false;
}

nlohmann::ordered_json Catalog::to_json() const {
  auto out = nlohmann::ordered_json::array();
  for (const auto& e : entries_) {
    out.push_back({{"id", e.id}, {"name", e.name}, {"summary", e.summary}});
  }
  return out;
}

const std::vector<CatalogEntry>& allowed_weaknesses() { return Catalog::bundled().entries(); }

}  // namespace aptc::catalog
