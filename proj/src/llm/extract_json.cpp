#include "aptc/llm/extract_json.hpp"

#include <optional>

namespace aptc::llm {

namespace {

/// End offset (exclusive) of the bracketed region starting at `start`, honoring
/// string literals and escapes; nullopt when unbalanced.
std::optional<std::size_t> balanced_end(std::string_view s, std::size_t start) {
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    char ch = s[i];
    if (in_string) {
      if (escaped) escaped = false;
      else if (ch == '\\') escaped = true;
      else if (ch == '"') in_string = false;
      continue;
    }
    switch (ch) {
      case '"': in_string = true; break;
      case '[':
      case '{': ++depth; break;
      case ']':
      case '}':
        if (--depth == 0) return i + 1;
        break;
      default: break;
    }
  }
  return std::nullopt;
}

}  // namespace

nlohmann::ordered_json extract_json(std::string_view raw, Pick pick) {
  std::optional<nlohmann::ordered_json> found;
  std::optional<JsonSyntaxError> first_error;
  bool any_candidate = false;

  std::size_t pos = 0;
  while (pos < raw.size()) {
    auto start = raw.find_first_of("[{", pos);
    if (start == std::string_view::npos) break;
    any_candidate = true;
    auto end = balanced_end(raw, start);
    if (!end) {
      if (!first_error) first_error.emplace(start, "unbalanced brackets");
      pos = start + 1;
      continue;
    }
    try {
      auto value = nlohmann::ordered_json::parse(raw.substr(start, *end - start));
      if (pick == Pick::First) return value;
      found = std::move(value);
      pos = *end;
    } catch (const nlohmann::json::parse_error& e) {
      if (!first_error) first_error.emplace(start + (e.byte > 0 ? e.byte - 1 : 0), e.what());
      pos = start + 1;
    }
  }
  if (found) return *found;
  if (!any_candidate) throw NoJsonFound();
  throw *first_error;
}

}  // namespace aptc::llm
