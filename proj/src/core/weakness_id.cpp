#include "aptc/core/weakness_id.hpp"

#include <cctype>

namespace aptc::core {

namespace {

constexpr std::string_view kSpace = " \t\n\v\f\r";

bool iequals_prefix(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
  }
  return true;
}

}  // namespace

std::optional<std::string> try_normalize_weakness_id(std::string_view raw) {
  auto first = raw.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return std::nullopt;
  auto last = raw.find_last_not_of(kSpace);
  std::string_view s = raw.substr(first, last - first + 1);

  if (iequals_prefix(s, "CAWE-")) s.remove_prefix(5);
  else if (iequals_prefix(s, "CWE-")) s.remove_prefix(4);
  else return std::nullopt;

  if (s.empty() || s.size() > 5) return std::nullopt;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return std::nullopt;
  }
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  return "CWE-" + std::string(s);
}

std::string normalize_weakness_id(std::string_view raw) {
  auto id = try_normalize_weakness_id(raw);
  if (!id) throw MalformedWeaknessId(raw);
  return *id;
}

}  // namespace aptc::core
