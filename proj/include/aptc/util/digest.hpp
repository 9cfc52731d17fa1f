#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace aptc::util {

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// Incremental SHA-256 over length-prefixed fields, so that ("ab","c") and
/// ("a","bc") hash differently.
class FieldHasher {
 public:
  FieldHasher& add(std::string_view field);
  FieldHasher& add(const std::vector<std::string>& fields);
  std::string hex() const;

 private:
  std::string buffer_;
};

}  // namespace aptc::util
