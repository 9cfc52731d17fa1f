#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace aptc::llm {

class NoJsonFound : public std::runtime_error {
 public:
  NoJsonFound() : std::runtime_error("response contains no JSON array or object") {}
};

class JsonSyntaxError : public std::runtime_error {
 public:
  JsonSyntaxError(std::size_t offset, const std::string& detail)
      : std::runtime_error("invalid JSON at byte " + std::to_string(offset) + ": " + detail),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

enum class Pick { First, Last };

/// Recovers the JSON payload from a model response that may be wrapped in
/// code fences or prose. Scans for top-level arrays/objects; with Pick::Last
/// (chain-of-thought answers) the final one wins. Key order is preserved.
nlohmann::ordered_json extract_json(std::string_view raw, Pick pick = Pick::First);

}  // namespace aptc::llm
