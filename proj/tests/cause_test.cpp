#include <gtest/gtest.h>

#include "causelab/cause.hpp"
#include "support/corpus.hpp"

using namespace causelab;

namespace {

const ExtendedModel& forest() {
  static const ExtendedModel m = corpus::model("forest_fire.cm", "forest_fire");
  return m;
}

CauseVerdict cause_in(const ExtendedModel& m, std::initializer_list<Setting> x, const EventFormula& phi,
                      const Context& u, SearchOptions opt = {}) {
  return is_actual_cause(m, u, CandidateCause(x), phi, opt);
}

}  // namespace

TEST(ForestFire, DisjunctiveMechanism) {
  const auto v = cause_in(forest(), {{"L", 1}}, event("F", 1), Context{{1, 1, 1}});
  ASSERT_TRUE(v.is_cause);
  EXPECT_EQ(v.min_changes, 1u);
  ASSERT_FALSE(v.witnesses.empty());
  const auto& w = v.witnesses.front();
  EXPECT_EQ(w.w_set(), (std::vector<std::string>{"ML"}));
  EXPECT_EQ(w.w, (Conjunction{{"ML", 0}}));
  EXPECT_EQ(w.x_prime, (Conjunction{{"L", 0}}));
  EXPECT_EQ(w.changes, 1u);
  EXPECT_EQ(w.world.values, (std::vector<int>{0, 0, 0}));
}

TEST(ForestFire, ConjunctiveMechanismIsButFor) {
  for (const char* x : {"L", "ML"}) {
    const auto v = cause_in(forest(), {{x, 1}}, event("F", 1), Context{{1, 1, 2}});
    ASSERT_TRUE(v.is_cause) << x;
    EXPECT_EQ(v.min_changes, 0u);
    EXPECT_TRUE(v.witnesses.front().w.empty());
  }
}

TEST(ForestFire, Ac1Failure) {
  const auto v = cause_in(forest(), {{"ML", 1}}, event("F", 1), Context{{1, 0, 2}});
  EXPECT_FALSE(v.is_cause);
  EXPECT_EQ(v.failed, Condition::ac1);
}

TEST(ForestFire, FireRegardlessFailsAc2a) {
  for (const char* x : {"L", "ML"}) {
    const auto v = cause_in(forest(), {{x, 1}}, event("F", 1), Context{{1, 1, 0}});
    EXPECT_FALSE(v.is_cause);
    EXPECT_EQ(v.failed, Condition::ac2a) << x;
  }
}

TEST(ForestFire, ConjunctionFailsMinimality) {
  const auto v = cause_in(forest(), {{"L", 1}, {"ML", 1}}, event("F", 1), Context{{1, 1, 1}});
  EXPECT_FALSE(v.is_cause);
  EXPECT_EQ(v.failed, Condition::ac3);
  ASSERT_TRUE(v.minimal_subcause.has_value());
  EXPECT_EQ(*v.minimal_subcause, (Conjunction{{"L", 1}}));
}

TEST(SuzyBilly, CoarseModelMakesBothCauses) {
  const auto m = corpus::model("suzy_billy.cm", "suzy_coarse");
  EXPECT_TRUE(cause_in(m, {{"ST", 1}}, event("BS", 1), Context{{1, 1}}).is_cause);
  EXPECT_TRUE(cause_in(m, {{"BT", 1}}, event("BS", 1), Context{{1, 1}}).is_cause);
}

TEST(SuzyBilly, RefinedModelSeparatesThem) {
  const auto m = corpus::model("suzy_billy.cm", "suzy_refined");
  EXPECT_TRUE(cause_in(m, {{"ST", 1}}, event("BS", 1), Context{{1, 1}}).is_cause);
  const auto v = cause_in(m, {{"BT", 1}}, event("BS", 1), Context{{1, 1}});
  EXPECT_FALSE(v.is_cause);
  EXPECT_EQ(v.failed, Condition::ac2b);
  ASSERT_FALSE(v.ac2b_failures.empty());
  const auto& f = v.ac2b_failures.front();
  EXPECT_EQ(f.witness.w, (Conjunction{{"ST", 0}}));
  EXPECT_EQ(f.w_prime, (Conjunction{{"ST", 0}}));
  EXPECT_EQ(f.z_prime, (Conjunction{{"BH", 0}}));
}

TEST(SuzyBilly, ReportedFailureReproducesWithTheLiteralCheck) {
  const auto m = corpus::model("suzy_billy.cm", "suzy_refined");
  const auto v = cause_in(m, {{"BT", 1}}, event("BS", 1), Context{{1, 1}});
  ASSERT_FALSE(v.ac2b_failures.empty());
  const auto check = check_ac2_detailed(m, Context{{1, 1}}, CandidateCause{{"BT", 1}}, event("BS", 1),
                                        v.ac2b_failures.front().witness);
  EXPECT_TRUE(check.ac2a);
  EXPECT_FALSE(check.ac2b);
}

TEST(Doctors, CausationIsNotTransitive) {
  const auto m = corpus::model("doctors.cm", "doctors");
  const Context u{{1}};
  const auto fine = event("BMC", 0) || event("BMC", 1) || event("BMC", 2);
  EXPECT_TRUE(cause_in(m, {{"MT", 1}}, event("BMC", 0), u).is_cause);
  EXPECT_TRUE(cause_in(m, {{"MT", 1}}, event("TT", 0), u).is_cause);
  EXPECT_TRUE(cause_in(m, {{"TT", 0}}, fine, u).is_cause);
  const auto v = cause_in(m, {{"MT", 1}}, fine, u);
  EXPECT_FALSE(v.is_cause);
  EXPECT_EQ(v.failed, Condition::ac2a);
}

TEST(Assassin, NormalityExcludesTheFarFetchedWitness) {
  const auto normal = corpus::model("assassin.cm", "assassin");
  const auto flat = corpus::model("assassin.cm", "assassin_flat");
  const Context u{{1, 1}};
  const auto v = cause_in(normal, {{"B", 1}}, event("VS", 1), u);
  EXPECT_FALSE(v.is_cause);
  EXPECT_EQ(v.failed, Condition::normality);
  EXPECT_TRUE(cause_in(flat, {{"B", 1}}, event("VS", 1), u).is_cause);
  SearchOptions pre;
  pre.semantics = Semantics::preliminary;
  EXPECT_TRUE(cause_in(normal, {{"B", 1}}, event("VS", 1), u, pre).is_cause);
}

TEST(Doctors5, OnlyTheAssignedDoctorsOmission) {
  const auto m = corpus::model("doctors5.cm", "doctors5");
  const auto u = make_context(m.model().signature(), {{"UA", 2}, {"UT", 0}});
  const auto causes = find_all_causes(m, u, event("BMC", 1), 1);
  ASSERT_EQ(causes.size(), 1u);
  EXPECT_EQ(causes.front().first.settings(), (Conjunction{{"MT2", 0}}));
}

TEST(Doctors5, TreatmentByTheAssignedDoctorCausesRecovery) {
  const auto m = corpus::model("doctors5.cm", "doctors5");
  const auto u = make_context(m.model().signature(), {{"UA", 2}, {"UT", 2}});
  const auto v = cause_in(m, {{"MT2", 1}}, event("BMC", 0), u);
  ASSERT_TRUE(v.is_cause);
  // The witness world has nobody assigned and nobody treating.
  EXPECT_EQ(v.witnesses.front().world.values, (std::vector<int>{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}));
}

TEST(FindAllCauses, ForestFire) {
  const auto all = find_all_causes(forest(), Context{{1, 1, 1}}, event("F", 1), 2);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0].first.settings(), (Conjunction{{"L", 1}}));
  EXPECT_EQ(all[1].first.settings(), (Conjunction{{"ML", 1}}));
  EXPECT_TRUE(find_all_causes(forest(), Context{{1, 1, 0}}, event("F", 1), 2).empty());
  EXPECT_TRUE(find_all_causes(forest(), Context{{0, 0, 1}}, event("F", 1), 2).empty());
}

TEST(CheckAc2, LiteralWitnessCheck) {
  const Context u{{1, 1, 1}};
  Witness good;
  good.x_prime = {{"L", 0}};
  good.w = {{"ML", 0}};
  EXPECT_TRUE(check_ac2(forest(), u, CandidateCause{{"L", 1}}, event("F", 1), good));
  Witness empty;
  empty.x_prime = {{"L", 0}};
  EXPECT_FALSE(check_ac2(forest(), u, CandidateCause{{"L", 1}}, event("F", 1), empty));
  Witness bad = good;
  bad.x_prime = {{"ML", 0}};
  EXPECT_THROW(check_ac2(forest(), u, CandidateCause{{"L", 1}}, event("F", 1), bad), Error);
}

TEST(CandidateCause, RejectsEmptyAndRepeated) {
  EXPECT_THROW(CandidateCause(Conjunction{}), Error);
  EXPECT_THROW((CandidateCause{{"L", 1}, {"L", 0}}), Error);
}

TEST(Search, RejectsBadInputs) {
  EXPECT_THROW(cause_in(forest(), {{"Q", 1}}, event("F", 1), Context{{1, 1, 1}}), Error);
  EXPECT_THROW(cause_in(forest(), {{"L", 1}}, event("F", 4), Context{{1, 1, 1}}), Error);
  EXPECT_THROW(cause_in(forest(), {{"L", 1}}, event("F", 1), Context{{1, 1}}), Error);
}

TEST(Search, CapIsEnforcedInExactMode) {
  const auto m = corpus::model("vote11.cm", "vote11");
  Context u{std::vector<int>(11, 0)};
  SearchOptions opt;
  opt.max_vars = 8;
  EXPECT_THROW(cause_in(m, {{"V1", 0}}, event("W", 0), u, opt), CapExceeded);
  opt.exact = false;
  const auto v = cause_in(m, {{"V1", 0}}, event("W", 0), u, opt);
  EXPECT_FALSE(v.sound);
  EXPECT_TRUE(v.is_cause);
}

TEST(Search, WitnessStorageCapKeepsTheCount) {
  SearchOptions opt;
  opt.max_witnesses = 1;
  const auto m = corpus::model("vote11.cm", "vote11");
  Context u{std::vector<int>(11, 0)};
  const auto v = cause_in(m, {{"V1", 0}}, event("W", 0), u, opt);
  ASSERT_TRUE(v.is_cause);
  EXPECT_EQ(v.min_changes, 5u);
  EXPECT_EQ(v.witnesses.size(), 1u);
  EXPECT_GT(v.witness_count, 1u);
}

TEST(Search, StatsAreCounted) {
  const auto v = cause_in(forest(), {{"L", 1}}, event("F", 1), Context{{1, 1, 1}});
  EXPECT_GT(v.stats.solves, 0u);
  EXPECT_GT(v.stats.ac2a_checks, 0u);
  EXPECT_GT(v.stats.ac2b_checks, 0u);
}
