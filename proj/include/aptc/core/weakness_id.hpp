#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aptc::core {

class MalformedWeaknessId : public std::invalid_argument {
 public:
  explicit MalformedWeaknessId(std::string_view raw)
      : std::invalid_argument("malformed weakness id '" + std::string(raw) + "'") {}
};

/// "CAWE-863", " cwe-863 " and "CWE-863" all map to "CWE-863". Prefix match is
/// case-insensitive, 1-5 digits, surrounding whitespace ignored. Leading zeros
/// are dropped, so "CAWE-0863" becomes "CWE-863".
std::string normalize_weakness_id(std::string_view raw);

/// Non-throwing variant.
std::optional<std::string> try_normalize_weakness_id(std::string_view raw);

}  // namespace aptc::core
