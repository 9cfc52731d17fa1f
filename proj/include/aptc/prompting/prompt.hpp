#pragma once

#include "aptc/catalog/catalog.hpp"
#include "aptc/serializer/security_view.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aptc::prompting {

enum class Strategy { ZeroShot, OneShot, FewShot, ChainOfThought };

/// "zero-shot", "one-shot", "few-shot", "chain-of-thought".
std::string_view to_string(Strategy s);
/// Accepts the long names and the short CLI forms zero|one|few|cot.
std::optional<Strategy> parse_strategy(std::string_view s);

/// Output constraints every system message carries word for word.
inline constexpr std::array<std::string_view, 3> kConstraints{
    "Use exact component and connector names from the provided architecture description; do not "
    "invent names.",
    "Use only the CWEs listed above; do not introduce additional CWEs.",
    "If information is insufficient, set applicability to \"uncertain\" (or \"not_applicable\" per "
    "schema) and state the missing information in the appropriate field.",
};

struct Exemplar {
  std::string label;
  nlohmann::ordered_json document;  ///< APTC wire format
};

struct PromptBundle {
  std::string system_message;
  std::string user_message;
  Strategy strategy = Strategy::ZeroShot;
  std::vector<Exemplar> exemplars;
  std::vector<std::string> target_weaknesses;  ///< canonical ids, request order
  std::string architecture_text;
  std::string case_study;  ///< architecture model name
};

class ExemplarArityError : public std::invalid_argument {
 public:
  ExemplarArityError(Strategy s, std::size_t count);
};

class UnknownWeakness : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Zero-shot takes no exemplars, one-shot exactly one, few-shot two or more;
/// chain-of-thought accepts any number. Output is a pure function of the inputs.
PromptBundle build_prompt(const serializer::SecurityView& view, Strategy strategy,
                          const std::vector<catalog::CatalogEntry>& weaknesses,
                          const std::vector<Exemplar>& exemplars,
                          const catalog::Catalog& catalog = catalog::Catalog::bundled());

inline constexpr std::size_t kDefaultShots = 3;

/// Exemplars from the bundled toy architecture: 0 for zero-shot and
/// chain-of-thought, 1 for one-shot, `shots` for few-shot.
std::vector<Exemplar> default_exemplars(Strategy strategy, std::size_t shots = kDefaultShots);

/// Number of bundled exemplars available.
std::size_t exemplar_pool_size();

/// "A", "A and B", "A, B, and C".
std::string join_weakness_ids(const std::vector<std::string>& ids);

}  // namespace aptc::prompting
