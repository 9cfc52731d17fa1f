#include "aptc/arch/model.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace aptc::arch {

namespace {

template <typename T>
const T* find_by_name(const std::vector<T>& items, std::string_view n) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.name == n; });
  return it == items.end() ? nullptr : &*it;
}

void require_component(const ArchitectureModel& model, std::string_view n) {
  if (model.find_component(n) == nullptr) {
    throw QueryError(QueryError::Kind::UnknownComponent, std::string(n));
  }
}

}  // namespace

QueryError::QueryError(Kind kind, const std::string& component)
    : std::runtime_error(kind == Kind::UnknownComponent ? "unknown component '" + component + "'"
                                                        : "component '" + component +
                                                              "' is not allocated"),
      kind_(kind),
      component_(component) {}

const Component* ArchitectureModel::find_component(std::string_view n) const {
  return find_by_name(components, n);
}

const Connector* ArchitectureModel::find_connector(std::string_view n) const {
  return find_by_name(connectors, n);
}

const Allocation* ArchitectureModel::find_allocation(std::string_view component) const {
  auto it = std::find_if(allocations.begin(), allocations.end(),
                         [&](const Allocation& a) { return a.component == component; });
  return it == allocations.end() ? nullptr : &*it;
}

std::set<std::string> component_names(const ArchitectureModel& model) {
  std::set<std::string> out;
  for (const auto& c : model.components) out.insert(c.name);
  return out;
}

std::optional<Connector> directly_connected(const ArchitectureModel& model, std::string_view a,
                                            std::string_view b) {
  require_component(model, a);
  require_component(model, b);
  const Connector* best = nullptr;
  for (const auto& c : model.connectors) {
    bool joins = (c.from == a && c.to == b) || (c.from == b && c.to == a);
    if (joins && (best == nullptr || c.name < best->name)) best = &c;
  }
  if (best == nullptr) return std::nullopt;
  return *best;
}

bool reachable(const ArchitectureModel& model, std::string_view a, std::string_view b) {
  require_component(model, a);
  require_component(model, b);
  if (a == b) return true;

  std::map<std::string_view, std::vector<std::string_view>> adjacency;
  for (const auto& c : model.connectors) {
    adjacency[c.from].push_back(c.to);
    adjacency[c.to].push_back(c.from);
  }
  std::set<std::string_view> seen{a};
  std::deque<std::string_view> frontier{a};
  while (!frontier.empty()) {
    auto current = frontier.front();
    frontier.pop_front();
    for (auto next : adjacency[current]) {
      if (next == b) return true;
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  return false;
}

bool deployment_linked(const ArchitectureModel& model, std::string_view a, std::string_view b) {
  require_component(model, a);
  require_component(model, b);
  const Allocation* alloc_a = model.find_allocation(a);
  if (alloc_a == nullptr) throw QueryError(QueryError::Kind::UnallocatedComponent, std::string(a));
  const Allocation* alloc_b = model.find_allocation(b);
  if (alloc_b == nullptr) throw QueryError(QueryError::Kind::UnallocatedComponent, std::string(b));

  if (alloc_a->container == alloc_b->container) return true;
  return std::any_of(model.links.begin(), model.links.end(), [&](const LinkingResource& link) {
    auto has = [&](const std::string& c) {
      return std::find(link.containers.begin(), link.containers.end(), c) != link.containers.end();
    };
    return has(alloc_a->container) && has(alloc_b->container);
  });
}

}  // namespace aptc::arch
