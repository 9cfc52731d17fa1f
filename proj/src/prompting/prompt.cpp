#include "aptc/prompting/prompt.hpp"
#include "aptc/core/pen_test_case.hpp"
#include "aptc/prompting/template.hpp"
#include "aptc/util/embedded.hpp"

#include <sstream>

namespace aptc::prompting {

namespace {

std::string trim_trailing_newlines(std::string_view s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
  return std::string(s);
}

bool arity_ok(Strategy s, std::size_t n) {
  switch (s) {
    case Strategy::ZeroShot: return n == 0;
    case Strategy::OneShot: return n == 1;
    case Strategy::FewShot: return n >= 2;
    case Strategy::ChainOfThought: return true;
  }
  return false;
}

std::string render_exemplars(const std::vector<Exemplar>& exemplars) {
  if (exemplars.empty()) return "";
  std::ostringstream os;
  os << "The following example APTCs were written for a different architecture. They show the "
        "required structure only; do not reuse their component or connector names.\n\n";
  for (std::size_t i = 0; i < exemplars.size(); ++i) {
    os << "Example " << (i + 1) << " (" << exemplars[i].label << "):\n"
       << exemplars[i].document.dump(2) << "\n\n";
  }
  return os.str();
}

std::vector<Exemplar> load_pool() {
  auto doc = nlohmann::ordered_json::parse(embedded::exemplars());
  std::vector<Exemplar> pool;
  for (const auto& e : doc.at("exemplars")) {
    pool.push_back({e.at("label").get<std::string>(), e.at("document")});
  }
  return pool;
}

const std::vector<Exemplar>& pool() {
  static const std::vector<Exemplar> p = load_pool();
  return p;
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::ZeroShot: return "zero-shot";
    case Strategy::OneShot: return "one-shot";
    case Strategy::FewShot: return "few-shot";
    case Strategy::ChainOfThought: return "chain-of-thought";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view s) {
  if (s == "zero" || s == "zero-shot") return Strategy::ZeroShot;
  if (s == "one" || s == "one-shot") return Strategy::OneShot;
  if (s == "few" || s == "few-shot") return Strategy::FewShot;
  if (s == "cot" || s == "chain-of-thought") return Strategy::ChainOfThought;
  return std::nullopt;
}

ExemplarArityError::ExemplarArityError(Strategy s, std::size_t count)
    : std::invalid_argument(std::string(to_string(s)) + " prompting cannot use " +
                            std::to_string(count) + " exemplar(s)") {}

std::string join_weakness_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ids.size() == 2 ? " and " : (i + 1 == ids.size() ? ", and " : ", ");
    out += ids[i];
  }
  return out;
}

PromptBundle build_prompt(const serializer::SecurityView& view, Strategy strategy,
                          const std::vector<catalog::CatalogEntry>& weaknesses,
                          const std::vector<Exemplar>& exemplars,
                          const catalog::Catalog& catalog) {
  if (!arity_ok(strategy, exemplars.size())) throw ExemplarArityError(strategy, exemplars.size());
  if (weaknesses.empty()) throw UnknownWeakness("at least one target weakness is required");
  for (const auto& w : weaknesses) {
    if (!catalog.contains(w.id)) throw UnknownWeakness("weakness " + w.id + " is not in the catalog");
  }
  for (const auto& e : exemplars) core::parse_aptc(nlohmann::json(e.document));

  PromptBundle b;
  b.strategy = strategy;
  b.exemplars = exemplars;
  b.architecture_text = view.full_text;
  b.case_study = view.model_name;

  std::string details;
  for (const auto& w : weaknesses) {
    b.target_weaknesses.push_back(w.id);
    details += "- " + w.id + " (" + w.name + ")";
    if (!w.summary.empty()) details += ": " + w.summary;
    details += "\n";
  }
  std::string constraints;
  for (auto c : kConstraints) constraints += "- " + std::string(c) + "\n";

  b.system_message = render_template(
      embedded::prompt_system(),
      {{"weakness_list", join_weakness_ids(b.target_weaknesses)},
       {"weakness_details", trim_trailing_newlines(details)},
       {"schema", trim_trailing_newlines(core::aptc_json_schema_text())},
       {"constraints", trim_trailing_newlines(constraints)}});
  if (strategy == Strategy::ChainOfThought) b.system_message += embedded::prompt_cot();

  b.user_message = render_template(
      embedded::prompt_user(),
      {{"exemplars", render_exemplars(exemplars)}, {"architecture", view.full_text}});
  return b;
}

std::size_t exemplar_pool_size() { return pool().size(); }

std::vector<Exemplar> default_exemplars(Strategy strategy, std::size_t shots) {
  switch (strategy) {
    case Strategy::ZeroShot:
    case Strategy::ChainOfThought:
      return {};
    case Strategy::OneShot:
      return {pool().front()};
    case Strategy::FewShot:
      if (shots < 2 || shots > pool().size()) {
        throw std::invalid_argument("few-shot needs between 2 and " +
                                    std::to_string(pool().size()) + " exemplars, got " +
                                    std::to_string(shots));
      }
      return {pool().begin(), pool().begin() + static_cast<std::ptrdiff_t>(shots)};
  }
  return {};
}

}  // namespace aptc::prompting
