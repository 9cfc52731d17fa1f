#include "aptc/arch/model.hpp"
#include "aptc/core/pen_test_case.hpp"
#include "aptc/prompting/prompt.hpp"
#include "aptc/prompting/template.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace aptc;
using namespace aptc::prompting;

namespace {

const std::string kData = APTC_DATA_DIR;

serializer::SecurityView view(const std::string& f = "maintenance.json") {
  return serializer::serialize_security_view(
      arch::load_architecture_file(kData + "/case_studies/" + f));
}

const std::vector<catalog::CatalogEntry>& all() { return catalog::Catalog::bundled().entries(); }

}  // namespace

TEST(Template, RendersSlots) {
  EXPECT_EQ(render_template("a {{x}} b {{y}}{{x}}", {{"x", "1"}, {"y", "2"}, {"z", "3"}}), "a 1 b 21");
  EXPECT_THROW(render_template("{{missing}}", {}), TemplateError);
  EXPECT_EQ(render_template("no slots", {}), "no slots");
}

TEST(Prompt, ArityEnforced) {
  auto v = view();
  auto pool = default_exemplars(Strategy::FewShot, exemplar_pool_size());
  ASSERT_GE(pool.size(), 3u);
  std::vector<Exemplar> none, one{pool[0]}, two{pool[0], pool[1]};
  EXPECT_NO_THROW(build_prompt(v, Strategy::ZeroShot, all(), none));
  EXPECT_THROW(build_prompt(v, Strategy::ZeroShot, all(), one), ExemplarArityError);
  EXPECT_NO_THROW(build_prompt(v, Strategy::OneShot, all(), one));
  EXPECT_THROW(build_prompt(v, Strategy::OneShot, all(), none), ExemplarArityError);
  EXPECT_THROW(build_prompt(v, Strategy::OneShot, all(), two), ExemplarArityError);
  EXPECT_NO_THROW(build_prompt(v, Strategy::FewShot, all(), two));
  EXPECT_THROW(build_prompt(v, Strategy::FewShot, all(), one), ExemplarArityError);
  EXPECT_NO_THROW(build_prompt(v, Strategy::ChainOfThought, all(), none));
  EXPECT_NO_THROW(build_prompt(v, Strategy::ChainOfThought, all(), two));
}

TEST(Prompt, UnknownWeaknessRejected) {
  auto v = view();
  EXPECT_THROW(build_prompt(v, Strategy::ZeroShot, {{"CWE-79", "XSS", ""}}, {}), UnknownWeakness);
  EXPECT_THROW(build_prompt(v, Strategy::ZeroShot, {}, {}), UnknownWeakness);
}

TEST(Prompt, SystemMessageContent) {
  auto b = build_prompt(view(), Strategy::ZeroShot, all(), {});
  EXPECT_NE(b.system_message.find(std::string(core::aptc_json_schema_text()).substr(0, 200)),
            std::string::npos);
  auto schema = std::string(core::aptc_json_schema_text());
  while (!schema.empty() && schema.back() == '\n') schema.pop_back();
  EXPECT_NE(b.system_message.find(schema), std::string::npos);
  for (auto c : kConstraints) EXPECT_NE(b.system_message.find(c), std::string::npos) << c;
  EXPECT_NE(b.system_message.find("Security Analysis View"), std::string::npos);
  EXPECT_NE(b.system_message.find("CWE-284, CWE-285, CWE-862, CWE-863, and CWE-272"),
            std::string::npos);
  EXPECT_EQ(b.user_message.find("Example 1"), std::string::npos);
  EXPECT_NE(b.user_message.find(b.architecture_text), std::string::npos);
  EXPECT_EQ(b.case_study, "Maintenance");
  EXPECT_EQ(b.target_weaknesses.size(), 5u);
}

TEST(Prompt, ChainOfThoughtAppendsReasoning) {
  auto z = build_prompt(view(), Strategy::ZeroShot, all(), {});
  auto c = build_prompt(view(), Strategy::ChainOfThought, all(), {});
  EXPECT_EQ(c.system_message.rfind(z.system_message, 0), 0u);
  EXPECT_GT(c.system_message.size(), z.system_message.size());
  EXPECT_NE(c.system_message.find("step by step"), std::string::npos);
}

TEST(Prompt, ExemplarsRenderedInUserMessage) {
  auto ex = default_exemplars(Strategy::FewShot, 3);
  auto b = build_prompt(view(), Strategy::FewShot, all(), ex);
  EXPECT_NE(b.user_message.find("Example 1"), std::string::npos);
  EXPECT_NE(b.user_message.find("Example 3"), std::string::npos);
  EXPECT_LT(b.user_message.find("Example 3"), b.user_message.find(b.architecture_text));
}

TEST(Prompt, Deterministic) {
  auto ex = default_exemplars(Strategy::OneShot);
  auto a = build_prompt(view("bank.json"), Strategy::OneShot, all(), ex);
  auto b = build_prompt(view("bank.json"), Strategy::OneShot, all(), ex);
  EXPECT_EQ(a.system_message, b.system_message);
  EXPECT_EQ(a.user_message, b.user_message);
}

TEST(Prompt, DefaultExemplarsAreValidAndUncontaminated) {
  EXPECT_TRUE(default_exemplars(Strategy::ZeroShot).empty());
  EXPECT_TRUE(default_exemplars(Strategy::ChainOfThought).empty());
  EXPECT_EQ(default_exemplars(Strategy::OneShot).size(), 1u);
  EXPECT_EQ(default_exemplars(Strategy::FewShot, 2).size(), 2u);
  EXPECT_THROW(default_exemplars(Strategy::FewShot, 1), std::invalid_argument);
  EXPECT_THROW(default_exemplars(Strategy::FewShot, exemplar_pool_size() + 1), std::invalid_argument);

  std::set<std::string> ids;
  for (const char* f : {"maintenance.json", "powergrid.json", "bank.json"}) {
    auto m = arch::load_architecture_file(kData + "/case_studies/" + f);
    auto s = serializer::model_identifiers(m);
    ids.insert(s.begin(), s.end());
    ids.insert(m.name);
  }
  for (const auto& e : default_exemplars(Strategy::FewShot, exemplar_pool_size())) {
    EXPECT_NO_THROW(core::parse_aptc(nlohmann::json(e.document)));
    auto text = e.document.dump();
    for (const auto& id : ids) EXPECT_FALSE(serializer::contains_identifier(text, id)) << id;
  }
}

TEST(Prompt, StrategyNames) {
  EXPECT_EQ(parse_strategy("cot"), Strategy::ChainOfThought);
  EXPECT_EQ(parse_strategy("few-shot"), Strategy::FewShot);
  EXPECT_FALSE(parse_strategy("two-shot"));
  EXPECT_EQ(join_weakness_ids({"A"}), "A");
  EXPECT_EQ(join_weakness_ids({"A", "B"}), "A and B");
  EXPECT_EQ(join_weakness_ids({"A", "B", "C"}), "A, B, and C");
}
