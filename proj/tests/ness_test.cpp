#include <gtest/gtest.h>

#include "causelab/ness.hpp"
#include "support/corpus.hpp"

using namespace causelab;

namespace {

CausalModel model(const char* file, const char* name) { return corpus::model(file, name).model(); }

}  // namespace

TEST(SufficientSet, SortedAndConsistent) {
  const SufficientSet s({{"B", 1}, {"A", 0}, {"B", 1}});
  EXPECT_EQ(s.events(), (std::vector<PrimitiveEvent>{{"A", 0}, {"B", 1}}));
  EXPECT_THROW(SufficientSet({{"A", 0}, {"A", 1}}), Error);
}

TEST(IsSufficient, DisjunctiveForestFire) {
  const auto m = model("forest_fire_disjunctive.cm", "forest_disjunctive");
  EXPECT_TRUE(is_sufficient(m, SufficientSet({{"L", 1}}), event("F", 1)));
  EXPECT_TRUE(is_sufficient(m, SufficientSet({{"ML", 1}}), event("F", 1)));
  EXPECT_FALSE(is_sufficient(m, SufficientSet(), event("F", 1)));
}

TEST(IsSufficient, PoisonedTeaIgnoresTheShot) {
  const auto m = model("poisoned_tea.cm", "tea_drink");
  EXPECT_TRUE(is_sufficient(m, SufficientSet({{"CP", 1}, {"Drink", 1}}), event("PD", 1)));
  EXPECT_FALSE(is_sufficient(m, SufficientSet({{"Drink", 1}}), event("PD", 1)));
}

TEST(IsSufficient, NotMonotone) {
  // {BT=1} suffices in the refined rock-throwing model, but adding the
  // actual event BH=0 (Billy's rock does not hit) breaks sufficiency.
  const auto m = model("suzy_billy.cm", "suzy_refined");
  EXPECT_TRUE(is_sufficient(m, SufficientSet({{"BT", 1}}), event("BS", 1)));
  EXPECT_FALSE(is_sufficient(m, SufficientSet({{"BT", 1}, {"BH", 0}}), event("BS", 1)));
}

TEST(IsNessCause, DisjunctiveForestFire) {
  const auto m = model("forest_fire_disjunctive.cm", "forest_disjunctive");
  auto s = is_ness_cause(m, Context{{1, 1}}, {"L", 1}, event("F", 1));
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->events(), (std::vector<PrimitiveEvent>{{"L", 1}}));
  EXPECT_FALSE(is_ness_cause(m, Context{{0, 1}}, {"L", 1}, event("F", 1)).has_value());
}

TEST(IsNessCause, PoisonedTeaDivergesFromActualCausation) {
  const auto alive = corpus::model("poisoned_tea.cm", "tea_alive");
  const Context u{{1, 1}};
  auto s = is_ness_cause(alive.model(), u, {"CP", 1}, event("PD", 1));
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->events(), (std::vector<PrimitiveEvent>{{"CP", 1}}));
  EXPECT_FALSE(is_actual_cause(alive, u, CandidateCause{{"CP", 1}}, event("PD", 1)).is_cause);
  EXPECT_TRUE(is_actual_cause(alive, u, CandidateCause{{"DS", 1}}, event("PD", 1)).is_cause);
}

TEST(IsNessCause, DrinkingIsPartOfTheSet) {
  const auto m = model("poisoned_tea.cm", "tea_drink");
  auto s = is_ness_cause(m, Context{{1, 1, 1}}, {"CP", 1}, event("PD", 1));
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->events(), (std::vector<PrimitiveEvent>{{"CP", 1}, {"Drink", 1}}));
}

TEST(IsNessCause, DischargeSwitchHasNoSet) {
  const auto m = model("discharge.cm", "discharge_switch");
  EXPECT_FALSE(is_ness_cause(m, Context{{15, 13}}, {"D2", 13}, event("I", 1)).has_value());
}

TEST(IsNessCause, ReturnedSetsAreActualAndSufficient) {
  const auto m = model("suzy_billy.cm", "suzy_refined");
  const Context u{{1, 1}};
  const World actual = solve(m, u);
  for (const auto& v : m.signature().endogenous()) {
    const PrimitiveEvent a{v.name, actual.values[m.signature().endogenous_index(v.name)]};
    auto s = is_ness_cause(m, u, a, event("BS", 1));
    if (!s) continue;
    EXPECT_TRUE(is_sufficient(m, *s, event("BS", 1)));
    for (const auto& e : s->events())
      EXPECT_EQ(actual.values[m.signature().endogenous_index(e.variable)], e.value);
    EXPECT_TRUE(holds(m, u, event("BS", 1)));
  }
}

TEST(IsNessCause, RejectsBadInputs) {
  const auto m = model("forest_fire_disjunctive.cm", "forest_disjunctive");
  EXPECT_THROW(is_ness_cause(m, Context{{1, 1}}, {"Q", 1}, event("F", 1)), Error);
  EXPECT_THROW(is_ness_cause(m, Context{{1, 1}}, {"L", 1}, event("F", 3)), Error);
}
