#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

namespace aptc::testkit {

using nlohmann::json;

bool reachable_by_path_enumeration(const arch::ArchitectureModel& m, const std::string& a,
                                   const std::string& b) {
  bool found = false;
  std::vector<std::string> path{a};
  std::function<void(const std::string&)> extend = [&](const std::string& at) {
    if (at == b) found = true;
    for (const auto& c : m.connectors) {
      std::string next;
      if (c.from == at) next = c.to;
      else if (c.to == at) next = c.from;
      else continue;
      if (std::find(path.begin(), path.end(), next) != path.end()) continue;
      path.push_back(next);
      extend(next);
      path.pop_back();
    }
  };
  extend(a);
  return found;
}

std::optional<std::string> connector_by_scan(const arch::ArchitectureModel& m, const std::string& a,
                                             const std::string& b) {
  std::optional<std::string> best;
  for (const auto& c : m.connectors) {
    bool joins = (c.from == a && c.to == b) || (c.from == b && c.to == a);
    if (joins && (!best || c.name < *best)) best = c.name;
  }
  return best;
}

std::optional<bool> linked_by_scan(const arch::ArchitectureModel& m, const std::string& a,
                                   const std::string& b) {
  std::string ca, cb;
  for (const auto& al : m.allocations) {
    if (al.component == a) ca = al.container;
    if (al.component == b) cb = al.container;
  }
  if (ca.empty() || cb.empty()) return std::nullopt;
  if (ca == cb) return true;
  for (const auto& l : m.links) {
    bool has_a = false, has_b = false;
    for (const auto& c : l.containers) {
      has_a = has_a || c == ca;
      has_b = has_b || c == cb;
    }
    if (has_a && has_b) return true;
  }
  return false;
}

namespace {

template <class T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

bool chance(std::mt19937_64& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

const std::vector<std::string> kProps{"Confidentiality", "Integrity", "Availability", "Authenticity"};
const std::vector<std::string> kComponents{"Gateway", "Ledger", "Scheduler", "Vault", "Console"};

std::string random_weakness(std::mt19937_64& rng) {
  static const std::vector<std::string> prefixes{"CWE-", "CAWE-", "cwe-", "Cawe-"};
  std::string digits = std::to_string(std::uniform_int_distribution<int>(1, 99999)(rng));
  std::string id = pick(prefixes, rng) + digits;
  if (chance(rng, 0.15)) id = " " + id + "\t";
  return id;
}

}  // namespace

json random_valid_aptc(std::mt19937_64& rng) {
  json doc = json::object();
  if (chance(rng, 0.7)) {
    doc["CAWE"] = random_weakness(rng);
  } else {
    json arr = json::array();
    int n = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int i = 0; i < n; ++i) arr.push_back(random_weakness(rng));
    doc["CAWE"] = arr;
  }
  if (chance(rng, 0.5)) {
    doc["violatedSecurityProperty"] = pick(kProps, rng);
  } else {
    std::vector<std::string> props = kProps;
    std::shuffle(props.begin(), props.end(), rng);
    props.resize(std::uniform_int_distribution<std::size_t>(1, props.size())(rng));
    doc["violatedSecurityProperty"] = props;
  }
  doc["Threat"] = "Threat " + std::to_string(rng() % 1000);
  json av{{"Name", "Vector " + std::to_string(rng() % 1000)}};
  std::string entry = pick(kComponents, rng);
  std::string asset = chance(rng, 0.2) ? entry : pick(kComponents, rng);
  av["EntryPoint"] = entry;
  av["Asset"] = asset;
  if (entry != asset) av["Connector"] = entry + asset;
  doc["AttackVector"] = av;
  if (chance(rng, 0.3)) doc["id"] = "case-" + std::to_string(rng() % 1000);
  if (chance(rng, 0.3)) {
    static const std::vector<std::string> app{"applicable", "uncertain", "not_applicable"};
    doc["applicability"] = pick(app, rng);
    if (doc["applicability"] != "applicable" || chance(rng, 0.3)) {
      doc["missingInformation"] = "unknown deployment";
    }
  }
  return doc;
}

json mutate_aptc(json doc, std::mt19937_64& rng) {
  static const std::vector<json> odd_values{
      json(nullptr), json(42), json(true), json::array(), json::object(), json(""), json("   "),
      json("\t\n"), json("x"), json("CWE-"), json("CWE-123456"), json("XSS-1"), json("integrity"),
      json("Privacy"), json({"Confidentiality", "Confidentiality"}), json({"CWE-1", 7}),
      json("CAWE-0863"), json(3.5)};
  static const std::vector<std::string> top{"CAWE", "violatedSecurityProperty", "Threat",
                                            "AttackVector", "id", "applicability",
                                            "missingInformation", "severity", "Steps"};
  static const std::vector<std::string> vec{"Name", "Connector", "EntryPoint", "Asset",
                                            "Steps", "attackSteps", "Protocol"};
  int edits = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int e = 0; e < edits; ++e) {
    int kind = std::uniform_int_distribution<int>(0, 9)(rng);
    json* target = &doc;
    const std::vector<std::string>* keys = &top;
    if (kind >= 5 && doc.contains("AttackVector") && doc["AttackVector"].is_object()) {
      target = &doc["AttackVector"];
      keys = &vec;
    }
    const std::string& key = pick(*keys, rng);
    switch (kind % 5) {
      case 0:
        target->erase(key);
        break;
      case 1:
        (*target)[key] = pick(odd_values, rng);
        break;
      case 2:
        if (target != &doc) {
          (*target)["Connector"] = "Bridge";
        } else if (doc.contains("AttackVector") && doc["AttackVector"].is_object()) {
          doc["AttackVector"]["EntryPoint"] = "Vault";
          doc["AttackVector"]["Asset"] = "Vault";
        } else {
          doc[key] = "Bridge";
        }
        break;
      case 3:
        if (key == "applicability" || chance(rng, 0.5)) {
          doc["applicability"] = chance(rng, 0.5) ? "uncertain" : "not_applicable";
        } else {
          (*target)[key] = std::string(key) + " value";
        }
        break;
      case 4:
        if (chance(rng, 0.5)) doc = pick(odd_values, rng);
        else if (doc.is_object()) doc.erase("missingInformation");
        break;
    }
    if (!doc.is_object()) break;
  }
  return doc;
}

}  // namespace aptc::testkit
