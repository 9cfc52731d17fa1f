#include "aptc/arch/model.hpp"
#include "aptc/util/files.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace aptc::arch {

namespace {

using nlohmann::json;

std::string child(const std::string& ptr, std::string_view key) {
  std::string escaped;
  for (char ch : key) {
    if (ch == '~') escaped += "~0";
    else if (ch == '/') escaped += "~1";
    else escaped.push_back(ch);
  }
  return ptr + "/" + escaped;
}

std::string child(const std::string& ptr, std::size_t index) {
  return ptr + "/" + std::to_string(index);
}

class Reader {
 public:
  explicit Reader(const LoadOptions& options) : options_(options) {}

  void expect_keys(const json& obj, const std::string& ptr,
                   std::initializer_list<std::string_view> required,
                   std::initializer_list<std::string_view> optional = {}) const {
    if (!obj.is_object()) throw ParseError("expected an object", ptr);
    for (auto key : required) {
      if (!obj.contains(key)) throw ParseError("missing key '" + std::string(key) + "'", ptr);
    }
    for (const auto& [key, value] : obj.items()) {
      auto known = [&](auto list) {
        return std::find(list.begin(), list.end(), key) != list.end();
      };
      if (known(required) || known(optional)) continue;
      std::string msg = "unknown key '" + key + "'";
      if (!options_.lenient) throw IntegrityError(msg, ptr);
      if (options_.on_warning) options_.on_warning(ptr + ": " + msg);
    }
  }

  static std::string string_at(const json& obj, std::string_view key, const std::string& ptr) {
    const auto& v = obj.at(key);
    if (!v.is_string()) throw ParseError("expected a string", child(ptr, key));
    return v.get<std::string>();
  }

  static const json& array_at(const json& obj, std::string_view key, const std::string& ptr) {
    const auto& v = obj.at(key);
    if (!v.is_array()) throw ParseError("expected an array", child(ptr, key));
    return v;
  }

  static std::vector<std::string> strings_at(const json& obj, std::string_view key,
                                             const std::string& ptr) {
    const auto& arr = array_at(obj, key, ptr);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_string()) throw ParseError("expected a string", child(child(ptr, key), i));
      out.push_back(arr[i].get<std::string>());
    }
    return out;
  }

 private:
  const LoadOptions& options_;
};

void require_non_empty(const std::string& value, const std::string& ptr) {
  if (value.empty()) throw IntegrityError("name must be non-empty", ptr);
}

template <typename T, typename Key>
void require_unique(const std::vector<T>& items, Key key, const std::string& ptr,
                    std::string_view what) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string& k = key(items[i]);
    if (!seen.insert(k).second) {
      throw IntegrityError("duplicate " + std::string(what) + " name '" + k + "'",
                           child(child(ptr, i), "name"));
    }
  }
}

void require_no_duplicates(const std::vector<std::string>& values, const std::string& ptr) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!seen.insert(values[i]).second) {
      throw IntegrityError("duplicate entry '" + values[i] + "'", child(ptr, i));
    }
  }
}

ArchitectureModel read_model(const json& doc, const LoadOptions& options) {
  Reader r(options);
  r.expect_keys(doc, "",
                {"name", "components", "interfaces", "connectors", "containers", "links",
                 "allocations"});

  ArchitectureModel m;
  m.name = Reader::string_at(doc, "name", "");

  const auto& comps = Reader::array_at(doc, "components", "");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    auto ptr = child("/components", i);
    r.expect_keys(comps[i], ptr, {"name", "provides", "requires"}, {"assetNote"});
    Component c;
    c.name = Reader::string_at(comps[i], "name", ptr);
    c.provides = Reader::strings_at(comps[i], "provides", ptr);
    c.requires_ = Reader::strings_at(comps[i], "requires", ptr);
    if (comps[i].contains("assetNote")) c.asset_note = Reader::string_at(comps[i], "assetNote", ptr);
    m.components.push_back(std::move(c));
  }

  const auto& ifaces = Reader::array_at(doc, "interfaces", "");
  for (std::size_t i = 0; i < ifaces.size(); ++i) {
    auto ptr = child("/interfaces", i);
    r.expect_keys(ifaces[i], ptr, {"name"}, {"operations"});
    InterfaceDef d;
    d.name = Reader::string_at(ifaces[i], "name", ptr);
    if (ifaces[i].contains("operations")) d.operations = Reader::strings_at(ifaces[i], "operations", ptr);
    m.interfaces.push_back(std::move(d));
  }

  const auto& conns = Reader::array_at(doc, "connectors", "");
  for (std::size_t i = 0; i < conns.size(); ++i) {
    auto ptr = child("/connectors", i);
    r.expect_keys(conns[i], ptr, {"name", "from", "to", "interface"});
    m.connectors.push_back({Reader::string_at(conns[i], "name", ptr),
                            Reader::string_at(conns[i], "from", ptr),
                            Reader::string_at(conns[i], "to", ptr),
                            Reader::string_at(conns[i], "interface", ptr)});
  }

  const auto& containers = Reader::array_at(doc, "containers", "");
  for (std::size_t i = 0; i < containers.size(); ++i) {
    auto ptr = child("/containers", i);
    r.expect_keys(containers[i], ptr, {"name"});
    m.containers.push_back({Reader::string_at(containers[i], "name", ptr)});
  }

  const auto& links = Reader::array_at(doc, "links", "");
  for (std::size_t i = 0; i < links.size(); ++i) {
    auto ptr = child("/links", i);
    r.expect_keys(links[i], ptr, {"name", "containers"});
    m.links.push_back({Reader::string_at(links[i], "name", ptr),
                       Reader::strings_at(links[i], "containers", ptr)});
  }

  const auto& allocs = Reader::array_at(doc, "allocations", "");
  for (std::size_t i = 0; i < allocs.size(); ++i) {
    auto ptr = child("/allocations", i);
    r.expect_keys(allocs[i], ptr, {"component", "container"});
    m.allocations.push_back({Reader::string_at(allocs[i], "component", ptr),
                             Reader::string_at(allocs[i], "container", ptr)});
  }
  return m;
}

void check_integrity(const ArchitectureModel& m) {
  auto by_name = [](const auto& x) -> const std::string& { return x.name; };
  require_unique(m.components, by_name, "/components", "component");
  require_unique(m.interfaces, by_name, "/interfaces", "interface");
  require_unique(m.connectors, by_name, "/connectors", "connector");
  require_unique(m.containers, by_name, "/containers", "container");
  require_unique(m.links, by_name, "/links", "link");

  std::set<std::string> interface_names;
  for (std::size_t i = 0; i < m.interfaces.size(); ++i) {
    require_non_empty(m.interfaces[i].name, child(child("/interfaces", i), "name"));
    interface_names.insert(m.interfaces[i].name);
  }

  for (std::size_t i = 0; i < m.components.size(); ++i) {
    const auto& c = m.components[i];
    auto ptr = child("/components", i);
    require_non_empty(c.name, child(ptr, "name"));
    require_no_duplicates(c.provides, child(ptr, "provides"));
    require_no_duplicates(c.requires_, child(ptr, "requires"));
    for (std::size_t k = 0; k < c.provides.size(); ++k) {
      if (!interface_names.contains(c.provides[k])) {
        throw IntegrityError("unknown interface '" + c.provides[k] + "'",
                             child(child(ptr, "provides"), k));
      }
    }
    for (std::size_t k = 0; k < c.requires_.size(); ++k) {
      if (!interface_names.contains(c.requires_[k])) {
        throw IntegrityError("unknown interface '" + c.requires_[k] + "'",
                             child(child(ptr, "requires"), k));
      }
    }
  }

  for (std::size_t i = 0; i < m.connectors.size(); ++i) {
    const auto& c = m.connectors[i];
    auto ptr = child("/connectors", i);
    require_non_empty(c.name, child(ptr, "name"));
    const Component* from = m.find_component(c.from);
    if (from == nullptr) {
      throw IntegrityError("unknown component '" + c.from + "'", child(ptr, "from"));
    }
    const Component* to = m.find_component(c.to);
    if (to == nullptr) throw IntegrityError("unknown component '" + c.to + "'", child(ptr, "to"));
    if (c.from == c.to) {
      throw IntegrityError("connector '" + c.name + "' connects '" + c.from + "' to itself", ptr);
    }
    if (!interface_names.contains(c.interface)) {
      throw IntegrityError("unknown interface '" + c.interface + "'", child(ptr, "interface"));
    }
    if (std::find(to->provides.begin(), to->provides.end(), c.interface) == to->provides.end()) {
      throw IntegrityError("'" + c.to + "' does not provide '" + c.interface + "'",
                           child(ptr, "interface"));
    }
    if (std::find(from->requires_.begin(), from->requires_.end(), c.interface) ==
        from->requires_.end()) {
      throw IntegrityError("'" + c.from + "' does not require '" + c.interface + "'",
                           child(ptr, "interface"));
    }
  }

  std::set<std::string> container_names;
  for (std::size_t i = 0; i < m.containers.size(); ++i) {
    require_non_empty(m.containers[i].name, child(child("/containers", i), "name"));
    container_names.insert(m.containers[i].name);
  }

  for (std::size_t i = 0; i < m.links.size(); ++i) {
    const auto& l = m.links[i];
    auto ptr = child("/links", i);
    require_non_empty(l.name, child(ptr, "name"));
    if (l.containers.size() < 2) {
      throw IntegrityError("link '" + l.name + "' must join at least two containers",
                           child(ptr, "containers"));
    }
    require_no_duplicates(l.containers, child(ptr, "containers"));
    for (std::size_t k = 0; k < l.containers.size(); ++k) {
      if (!container_names.contains(l.containers[k])) {
        throw IntegrityError("unknown container '" + l.containers[k] + "'",
                             child(child(ptr, "containers"), k));
      }
    }
  }

  std::set<std::string> allocated;
  for (std::size_t i = 0; i < m.allocations.size(); ++i) {
    const auto& a = m.allocations[i];
    auto ptr = child("/allocations", i);
    if (m.find_component(a.component) == nullptr) {
      throw IntegrityError("unknown component '" + a.component + "'", child(ptr, "component"));
    }
    if (!container_names.contains(a.container)) {
      throw IntegrityError("unknown container '" + a.container + "'", child(ptr, "container"));
    }
    if (!allocated.insert(a.component).second) {
      throw IntegrityError("component '" + a.component + "' allocated more than once",
                           child(ptr, "component"));
    }
  }
}

}  // namespace

ArchitectureModel load_architecture(const nlohmann::json& document, const LoadOptions& options) {
  ArchitectureModel model = read_model(document, options);
  check_integrity(model);
  return model;
}

ArchitectureModel load_architecture(std::string_view json_text, const LoadOptions& options) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON at byte ") + std::to_string(e.byte), "");
  }
  return load_architecture(doc, options);
}

ArchitectureModel load_architecture_file(const std::filesystem::path& path,
                                         const LoadOptions& options) {
  return load_architecture(std::string_view(util::read_file(path)), options);
}

nlohmann::ordered_json emit_architecture(const ArchitectureModel& model) {
  using oj = nlohmann::ordered_json;
  oj doc;
  doc["name"] = model.name;
  doc["components"] = oj::array();
  for (const auto& c : model.components) {
    oj o;
    o["name"] = c.name;
    o["provides"] = c.provides;
    o["requires"] = c.requires_;
    if (c.asset_note) o["assetNote"] = *c.asset_note;
    doc["components"].push_back(std::move(o));
  }
  doc["interfaces"] = oj::array();
  for (const auto& i : model.interfaces) {
    doc["interfaces"].push_back(oj{{"name", i.name}, {"operations", i.operations}});
  }
  doc["connectors"] = oj::array();
  for (const auto& c : model.connectors) {
    doc["connectors"].push_back(
        oj{{"name", c.name}, {"from", c.from}, {"to", c.to}, {"interface", c.interface}});
  }
  doc["containers"] = oj::array();
  for (const auto& c : model.containers) doc["containers"].push_back(oj{{"name", c.name}});
  doc["links"] = oj::array();
  for (const auto& l : model.links) {
    doc["links"].push_back(oj{{"name", l.name}, {"containers", l.containers}});
  }
  doc["allocations"] = oj::array();
  for (const auto& a : model.allocations) {
    doc["allocations"].push_back(oj{{"component", a.component}, {"container", a.container}});
  }
  return doc;
}

}  // namespace aptc::arch
