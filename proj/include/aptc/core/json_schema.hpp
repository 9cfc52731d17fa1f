#pragma once

#include <json.hpp>

#include <map>
#include <regex>
#include <string>
#include <vector>

namespace aptc::core {

struct SchemaViolation {
  std::string instance_path;  ///< JSON pointer into the validated instance
  std::string keyword;
  std::string message;
};

/// Validator for the draft-07 subset the APTC schema uses: type, enum, const,
/// pattern, minLength/maxLength, required, properties, additionalProperties,
/// items, minItems/maxItems, uniqueItems, allOf/anyOf/oneOf/not,
/// if/then/else and local "#/..." $ref. Also implements the vendor keyword
/// x-connectorRule. Unknown keywords are ignored.
class JsonSchemaValidator {
 public:
  explicit JsonSchemaValidator(nlohmann::json schema);

  std::vector<SchemaViolation> validate(const nlohmann::json& instance) const;
  bool accepts(const nlohmann::json& instance) const { return validate(instance).empty(); }

 private:
  void compile_patterns(const nlohmann::json& node);
  void check(const nlohmann::json& schema, const nlohmann::json& value, const std::string& path,
             std::vector<SchemaViolation>& out, int depth) const;
  const nlohmann::json& resolve(const std::string& ref) const;

  nlohmann::json schema_;
  std::map<std::string, std::regex> patterns_;
};

}  // namespace aptc::core
