#include "aptc/core/json_schema.hpp"

#include <stdexcept>

namespace aptc::core {

namespace {

using nlohmann::json;

std::size_t utf8_length(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char ch : s) {
    if ((ch & 0xC0) != 0x80) ++n;
  }
  return n;
}

bool has_type(const json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  if (type == "number") return value.is_number();
  if (type == "integer") {
    if (value.is_number_integer()) return true;
    if (value.is_number_float()) {
      double d = value.get<double>();
      return d == static_cast<double>(static_cast<long long>(d));
    }
    return false;
  }
  throw std::invalid_argument("unsupported schema type '" + type + "'");
}

std::string escape_token(const std::string& key) {
  std::string out;
  for (char ch : key) {
    if (ch == '~') out += "~0";
    else if (ch == '/') out += "~1";
    else out.push_back(ch);
  }
  return out;
}

}  // namespace

JsonSchemaValidator::JsonSchemaValidator(nlohmann::json schema) : schema_(std::move(schema)) {
  compile_patterns(schema_);
}

void JsonSchemaValidator::compile_patterns(const json& node) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      if (key == "pattern" && value.is_string()) {
        patterns_.emplace(value.get<std::string>(),
                          std::regex(value.get<std::string>(), std::regex::ECMAScript));
      } else {
        compile_patterns(value);
      }
    }
  } else if (node.is_array()) {
    for (const auto& item : node) compile_patterns(item);
  }
}

const json& JsonSchemaValidator::resolve(const std::string& ref) const {
  if (ref.empty() || ref[0] != '#') throw std::invalid_argument("only local $ref supported: " + ref);
  return schema_.at(json::json_pointer(ref.substr(1)));
}

std::vector<SchemaViolation> JsonSchemaValidator::validate(const json& instance) const {
  std::vector<SchemaViolation> out;
  check(schema_, instance, "", out, 0);
  return out;
}

void JsonSchemaValidator::check(const json& schema, const json& value, const std::string& path,
                                std::vector<SchemaViolation>& out, int depth) const {
  if (depth > 64) throw std::runtime_error("schema recursion too deep");
  if (schema.is_boolean()) {
    if (!schema.get<bool>()) out.push_back({path, "false", "no value is allowed here"});
    return;
  }
  auto fail = [&](std::string keyword, std::string message) {
    out.push_back({path, std::move(keyword), std::move(message)});
  };
  auto sub_ok = [&](const json& s, const json& v) {
    std::vector<SchemaViolation> tmp;
    check(s, v, path, tmp, depth + 1);
    return tmp.empty();
  };

  if (auto it = schema.find("$ref"); it != schema.end()) {
    check(resolve(it->get<std::string>()), value, path, out, depth + 1);
  }

  if (auto it = schema.find("type"); it != schema.end()) {
    bool ok = false;
    if (it->is_string()) {
      ok = has_type(value, it->get<std::string>());
    } else {
      for (const auto& t : *it) ok = ok || has_type(value, t.get<std::string>());
    }
    if (!ok) {
      fail("type", "expected type " + it->dump());
      return;
    }
  }

  if (auto it = schema.find("enum"); it != schema.end()) {
    bool found = false;
    for (const auto& candidate : *it) found = found || candidate == value;
    if (!found) fail("enum", value.dump() + " is not one of " + it->dump());
  }
  if (auto it = schema.find("const"); it != schema.end() && *it != value) {
    fail("const", "expected " + it->dump());
  }

  if (value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    if (auto it = schema.find("minLength"); it != schema.end() && utf8_length(s) < it->get<std::size_t>()) {
      fail("minLength", "string shorter than " + it->dump());
    }
    if (auto it = schema.find("maxLength"); it != schema.end() && utf8_length(s) > it->get<std::size_t>()) {
      fail("maxLength", "string longer than " + it->dump());
    }
    if (auto it = schema.find("pattern"); it != schema.end()) {
      const auto& re = patterns_.at(it->get<std::string>());
      if (!std::regex_search(s, re)) fail("pattern", "does not match " + it->dump());
    }
  }

  if (value.is_array()) {
    if (auto it = schema.find("minItems"); it != schema.end() && value.size() < it->get<std::size_t>()) {
      fail("minItems", "fewer than " + it->dump() + " items");
    }
    if (auto it = schema.find("maxItems"); it != schema.end() && value.size() > it->get<std::size_t>()) {
      fail("maxItems", "more than " + it->dump() + " items");
    }
    if (auto it = schema.find("uniqueItems"); it != schema.end() && it->get<bool>()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        for (std::size_t j = i + 1; j < value.size(); ++j) {
          if (value[i] == value[j]) fail("uniqueItems", "items " + std::to_string(i) + " and " +
                                                            std::to_string(j) + " are equal");
        }
      }
    }
    if (auto it = schema.find("items"); it != schema.end()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        check(*it, value[i], path + "/" + std::to_string(i), out, depth + 1);
      }
    }
  }

  if (value.is_object()) {
    if (auto it = schema.find("required"); it != schema.end()) {
      for (const auto& key : *it) {
        if (!value.contains(key.get<std::string>())) {
          fail("required", "missing key '" + key.get<std::string>() + "'");
        }
      }
    }
    const json* props = nullptr;
    if (auto it = schema.find("properties"); it != schema.end()) props = &*it;
    for (const auto& [key, member] : value.items()) {
      std::string member_path = path + "/" + escape_token(key);
      if (props != nullptr && props->contains(key)) {
        check(props->at(key), member, member_path, out, depth + 1);
        continue;
      }
      if (auto it = schema.find("additionalProperties"); it != schema.end()) {
        if (it->is_boolean() && !it->get<bool>()) {
          out.push_back({member_path, "additionalProperties", "unknown key '" + key + "'"});
        } else if (it->is_object()) {
          check(*it, member, member_path, out, depth + 1);
        }
      }
    }
    if (auto it = schema.find("x-connectorRule"); it != schema.end()) {
      const auto& entry_key = it->at("entry").get_ref<const std::string&>();
      const auto& asset_key = it->at("asset").get_ref<const std::string&>();
      const auto& conn_key = it->at("connector").get_ref<const std::string&>();
      auto e = value.find(entry_key);
      auto a = value.find(asset_key);
      if (e != value.end() && a != value.end() && e->is_string() && a->is_string()) {
        bool same = *e == *a;
        bool has_connector = value.contains(conn_key);
        if (same && has_connector) {
          fail("x-connectorRule", "'" + conn_key + "' not allowed when '" + entry_key + "' equals '" +
                                      asset_key + "'");
        } else if (!same && !has_connector) {
          fail("x-connectorRule", "'" + conn_key + "' required when '" + entry_key + "' and '" +
                                      asset_key + "' differ");
        }
      }
    }
  }

  if (auto it = schema.find("allOf"); it != schema.end()) {
    for (const auto& s : *it) check(s, value, path, out, depth + 1);
  }
  if (auto it = schema.find("anyOf"); it != schema.end()) {
    bool any = false;
    for (const auto& s : *it) any = any || sub_ok(s, value);
    if (!any) fail("anyOf", "matches none of the alternatives");
  }
  if (auto it = schema.find("oneOf"); it != schema.end()) {
    int matches = 0;
    for (const auto& s : *it) matches += sub_ok(s, value) ? 1 : 0;
    if (matches != 1) {
      fail("oneOf", "matches " + std::to_string(matches) + " alternatives, expected exactly one");
    }
  }
  if (auto it = schema.find("not"); it != schema.end() && sub_ok(*it, value)) {
    fail("not", "matches a forbidden schema");
  }
  if (auto it = schema.find("if"); it != schema.end()) {
    if (sub_ok(*it, value)) {
      if (auto t = schema.find("then"); t != schema.end()) check(*t, value, path, out, depth + 1);
    } else if (auto e = schema.find("else"); e != schema.end()) {
      check(*e, value, path, out, depth + 1);
    }
  }
}

}  // namespace aptc::core
