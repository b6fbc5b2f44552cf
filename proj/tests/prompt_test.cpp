#include <gtest/gtest.h>

#include "parse_vectors.hpp"
#include "test_support.hpp"

using namespace grasp;
using grasp::tests::fixture;
using grasp::tests::grid_from_rows;

namespace {

const std::array<std::string, kGridSide> kWorkedRows = {
    "    E  E  O", "E  EE EEE E", "OOE EEO   E", "    O     E", "  OEE   O  ", "  E  O     ",
    " A E   EE  ", "EEEEOEEE EE", "EEEE EE EEE", "EEE E EOEOO", "   EO E EEE",
};

std::string prompt_fixture_name(bool obstacles, const ConstraintSet& c) {
  return std::string("prompts/system_obs") + (obstacles ? "1" : "0") + "_" + std::string(to_string(c.action_set)) +
         "_lim" + (c.carry_limit ? "2" : "0") + "_cost" + (c.step_cost_tenths ? "0.3" : "0") + ".txt";
}

}  // namespace

TEST(Prompt, SixteenSystemPromptsMatchFixtures) {
  for (bool obstacles : {false, true})
    for (const auto& c : all_constraint_sets())
      EXPECT_EQ(build_system_prompt(obstacles, c), read_file(fixture(prompt_fixture_name(obstacles, c))))
          << prompt_fixture_name(obstacles, c);
}

TEST(Prompt, WorkedExample) {
  Grid g = grid_from_rows(kWorkedRows);
  g.spec.has_obstacles = true;
  ConstraintSet c;
  c.action_set = ActionSet::Mu1;
  c.carry_limit = 2;
  c.step_cost_tenths = 3;
  const auto bundle = build_prompt(g, c, "gpt-4o");
  EXPECT_EQ(bundle.system, read_file(fixture("prompts/worked_system.txt")));
  EXPECT_EQ(bundle.user, read_file(fixture("prompts/worked_user.txt")));
  EXPECT_EQ(bundle.temperature, 0.0);
  EXPECT_EQ(bundle.model, "gpt-4o");
}

TEST(Prompt, FragmentsAppearOnlyWhenActive) {
  for (bool obstacles : {false, true})
    for (const auto& c : all_constraint_sets()) {
      const std::string s = build_system_prompt(obstacles, c);
      EXPECT_EQ(s.find("blocked by obstacles") != std::string::npos, obstacles);
      EXPECT_EQ(s.find("UPLEFT allows you") != std::string::npos, c.action_set == ActionSet::Mu2);
      EXPECT_EQ(s.find("only carry two") != std::string::npos, c.carry_limit.has_value());
      EXPECT_EQ(s.find("Each step costs") != std::string::npos, c.step_cost_tenths != 0);
    }
}

TEST(Prompt, UserPromptWithoutObstacles) {
  Grid g;
  g.set_start({3, 3});
  const std::string user = build_user_prompt(g, false);
  EXPECT_EQ(user.find("where A is you, E is energy:\n    0   1"), user.find("where A is you"));
  EXPECT_EQ(user.find(", O is an obstacle"), std::string::npos);
  EXPECT_TRUE(user.ends_with("+\nGive your sequence of steps as a list. For example: [STEP, STEP, ...]"));
}

TEST(Prompt, Deterministic) {
  const Grid g = generate(DistributionKind::Spiral, true, StartMode::Inner, 3, 0);
  const auto c = all_constraint_sets()[5];
  const auto a = build_prompt(g, c, "m");
  const auto b = build_prompt(g, c, "m");
  EXPECT_EQ(a.system, b.system);
  EXPECT_EQ(a.user, b.user);
}

class ParsePlan : public ::testing::TestWithParam<grasp::tests::ParseVector> {};

TEST_P(ParsePlan, Vector) {
  const auto& v = GetParam();
  const ActionPlan plan = parse_plan(v.raw);
  EXPECT_EQ(plan.actions, v.expected) << v.raw;
  std::vector<std::string> notes;
  for (const auto& n : plan.notes) notes.push_back(n.resolution);
  EXPECT_EQ(notes, v.notes) << v.raw;
  EXPECT_EQ(plan.raw_response, v.raw);
}

INSTANTIATE_TEST_SUITE_P(Vectors, ParsePlan, ::testing::ValuesIn(grasp::tests::parse_vectors()),
                         [](const auto& info) { return "v" + std::to_string(info.index); });

TEST(ParsePlanNotes, RecordsOffendingToken) {
  const auto plan = parse_plan("[UP, FLY, DOWN]");
  ASSERT_EQ(plan.notes.size(), 1u);
  EXPECT_EQ(plan.notes[0].token, "FLY");
  EXPECT_TRUE(plan.has_note("unresolved"));
}

TEST(ParsePlanNotes, NeverThrowsOnJunk) {
  Pcg32 rng(3);
  const std::string alphabet = "[],UPDOWNTAKE \n\"'`.x";
  for (int i = 0; i < 5000; ++i) {
    std::string s;
    const auto len = rng.below(40);
    for (std::uint32_t k = 0; k < len; ++k) s += alphabet[rng.below(static_cast<std::uint32_t>(alphabet.size()))];
    EXPECT_NO_THROW(parse_plan(s));
  }
}
