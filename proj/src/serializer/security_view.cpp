#include "aptc/serializer/security_view.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace aptc::serializer {

namespace {

using arch::ArchitectureModel;

template <typename T>
std::vector<const T*> sorted_by_name(const std::vector<T>& items) {
  std::vector<const T*> out;
  for (const auto& x : items) out.push_back(&x);
  std::sort(out.begin(), out.end(), [](const T* a, const T* b) { return a->name < b->name; });
  return out;
}

std::string join(std::vector<std::string> items) {
  std::sort(items.begin(), items.end());
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return items.empty() ? "(none)" : out;
}

std::string overview(const ArchitectureModel& m) {
  std::ostringstream os;
  os << "Architecture: " << m.name << "\n";
  os << m.components.size() << " components, " << m.connectors.size() << " connectors, "
     << m.interfaces.size() << " interfaces, " << m.containers.size() << " containers, "
     << m.links.size() << " links\n";
  if (!m.components.empty()) {
    os << "Components:\n";
    for (const auto* c : sorted_by_name(m.components)) {
      os << "- " << c->name;
      if (c->asset_note) os << " [asset: " << *c->asset_note << "]";
      os << "\n";
    }
  }
  return os.str();
}

std::string interfaces_and_dependencies(const ArchitectureModel& m, const SerializeOptions& opt) {
  std::ostringstream os;
  if (!m.interfaces.empty()) {
    os << "Interfaces:\n";
    for (const auto* i : sorted_by_name(m.interfaces)) {
      os << "- " << i->name << "\n";
      if (opt.include_operations) {
        std::vector<std::string> ops = i->operations;
        std::sort(ops.begin(), ops.end());
        for (const auto& op : ops) os << "  - operation: " << op << "\n";
      }
    }
  }
  for (const auto* c : sorted_by_name(m.components)) {
    os << "Component " << c->name << ":\n";
    os << "  provides: " << join(c->provides) << "\n";
    os << "  requires: " << join(c->requires_) << "\n";
    std::vector<const arch::Connector*> conns;
    for (const auto* k : sorted_by_name(m.connectors)) {
      if (k->from == c->name || k->to == c->name) conns.push_back(k);
    }
    if (conns.empty()) {
      os << "  connectors: (none)\n";
      continue;
    }
    os << "  connectors:\n";
    for (const auto* k : conns) {
      if (k->from == c->name) {
        os << "  - " << k->name << ": requires " << k->interface << " from " << k->to << "\n";
      } else {
        os << "  - " << k->name << ": provides " << k->interface << " to " << k->from << "\n";
      }
    }
  }
  return os.str();
}

std::string resource_environment(const ArchitectureModel& m) {
  std::ostringstream os;
  if (!m.containers.empty()) {
    os << "Containers:\n";
    for (const auto* c : sorted_by_name(m.containers)) os << "- " << c->name << "\n";
  }
  if (!m.links.empty()) {
    os << "Links:\n";
    for (const auto* l : sorted_by_name(m.links)) {
      os << "- " << l->name << " connects " << join(l->containers) << "\n";
    }
  }
  if (!m.components.empty()) {
    os << "Allocations:\n";
    for (const auto* c : sorted_by_name(m.components)) {
      const auto* a = m.find_allocation(c->name);
      os << "- " << c->name;
      if (a) os << " deployed on " << a->container << "\n";
      else os << " not allocated\n";
    }
  }
  return os.str();
}

bool is_word(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) != 0 || ch == '_';
}

}  // namespace

SecurityView serialize_security_view(const ArchitectureModel& model,
                                     const SerializeOptions& options) {
  SecurityView v;
  v.model_name = model.name;
  v.overview = overview(model);
  v.interfaces_and_dependencies = interfaces_and_dependencies(model, options);
  v.resource_environment = resource_environment(model);

  std::string& t = v.full_text;
  t.append(kOverviewHeader).append("\n").append(v.overview);
  t.append("\n").append(kInterfacesHeader).append("\n").append(v.interfaces_and_dependencies);
  t.append("\n").append(kResourceHeader).append("\n").append(v.resource_environment);
  return v;
}

std::set<std::string> model_identifiers(const ArchitectureModel& model) {
  std::set<std::string> ids;
  for (const auto& x : model.components) ids.insert(x.name);
  for (const auto& x : model.connectors) ids.insert(x.name);
  for (const auto& x : model.containers) ids.insert(x.name);
  for (const auto& x : model.links) ids.insert(x.name);
  for (const auto& x : model.interfaces) ids.insert(x.name);
  return ids;
}

bool contains_identifier(std::string_view text, std::string_view identifier) {
  if (identifier.empty()) return false;
  for (auto pos = text.find(identifier); pos != std::string_view::npos;
       pos = text.find(identifier, pos + 1)) {
    auto end = pos + identifier.size();
    bool left_ok = pos == 0 || !is_word(text[pos - 1]) || !is_word(identifier.front());
    bool right_ok = end == text.size() || !is_word(text[end]) || !is_word(identifier.back());
    if (left_ok && right_ok) return true;
  }
  return false;
}

IdentifierPartition extract_identifiers(const SecurityView& view,
                                        const ArchitectureModel& model) {
  IdentifierPartition out;
  for (const auto& id : model_identifiers(model)) {
    (contains_identifier(view.full_text, id) ? out.present : out.missing).insert(id);
  }
  return out;
}

}  // namespace aptc::serializer
