#include <gtest/gtest.h>

#include "causelab/normality.hpp"
#include "support/corpus.hpp"

using namespace causelab;

namespace {

Signature abc() { return Signature({}, {{"A", {0, 1}}, {"B", {0, 1}}, {"C", {0, 1, 2}}}); }

WorldPattern pat(std::vector<Setting> s) { return WorldPattern{std::move(s)}; }

World w(std::vector<int> v) { return World{std::move(v)}; }

}  // namespace

TEST(Close, EmptyDeclarationsGiveTheIdentity) {
  const auto c = close(NormalityOrder{}, abc());
  EXPECT_FALSE(c.is_flat());
  EXPECT_TRUE(c.at_least_as_normal(w({0, 0, 0}), w({0, 0, 0})));
  EXPECT_FALSE(c.at_least_as_normal(w({0, 0, 0}), w({1, 0, 0})));
  EXPECT_TRUE(c.strict_pairs().empty());
}

TEST(Close, FlatRelatesEverything) {
  const auto c = ClosedOrder::flat();
  EXPECT_TRUE(c.at_least_as_normal(w({0, 0, 0}), w({1, 1, 2})));
  EXPECT_TRUE(c.at_least_as_normal(w({1, 1, 2}), w({0, 0, 0})));
}

TEST(Close, Transitivity) {
  NormalityOrder o;
  const auto a = pat({{"A", 0}, {"B", 0}, {"C", 0}});
  const auto b = pat({{"A", 1}, {"B", 0}, {"C", 0}});
  const auto c = pat({{"A", 1}, {"B", 1}, {"C", 0}});
  o.pairs = {{a, b}, {b, c}};
  const auto closed = close(o, abc());
  EXPECT_TRUE(closed.at_least_as_normal(w({0, 0, 0}), w({1, 1, 0})));
  EXPECT_FALSE(closed.at_least_as_normal(w({1, 1, 0}), w({0, 0, 0})));
}

TEST(Close, PartialPairsHoldOtherVariablesFixed) {
  NormalityOrder o;
  o.pairs = {{pat({{"A", 1}}), pat({{"A", 0}})}};
  const auto c = close(o, abc());
  EXPECT_TRUE(c.at_least_as_normal(w({1, 0, 2}), w({0, 0, 2})));
  EXPECT_FALSE(c.at_least_as_normal(w({1, 0, 2}), w({0, 1, 2})));
  EXPECT_FALSE(c.at_least_as_normal(w({0, 0, 2}), w({1, 0, 2})));
}

TEST(Close, RanksOrderMatchingWorldsAndFirstMatchWins) {
  NormalityOrder o;
  o.ranks = {{pat({{"A", 1}, {"B", 1}}), 2}, {pat({{"A", 1}}), 0}, {pat({{"A", 0}}), 1}};
  const auto c = close(o, abc());
  // (1,1,x) has rank 2 because its first matching declaration says so.
  EXPECT_TRUE(c.at_least_as_normal(w({1, 0, 0}), w({0, 1, 1})));
  EXPECT_TRUE(c.at_least_as_normal(w({0, 1, 1}), w({1, 1, 0})));
  EXPECT_FALSE(c.at_least_as_normal(w({1, 1, 0}), w({0, 0, 0})));
  // Equal ranks are mutually comparable; antisymmetry is not imposed.
  EXPECT_TRUE(c.at_least_as_normal(w({1, 0, 0}), w({1, 0, 2})));
  EXPECT_TRUE(c.at_least_as_normal(w({1, 0, 2}), w({1, 0, 0})));
}

TEST(Close, RanksAndPairsCombine) {
  NormalityOrder o;
  o.ranks = {{pat({{"C", 0}}), 0}, {pat({{"C", 1}}), 1}};
  o.pairs = {{pat({{"A", 0}, {"B", 0}, {"C", 1}}), pat({{"A", 1}, {"B", 1}, {"C", 2}})}};
  const auto c = close(o, abc());
  EXPECT_TRUE(c.at_least_as_normal(w({1, 1, 0}), w({1, 1, 2})));
  EXPECT_FALSE(c.at_least_as_normal(w({1, 1, 2}), w({1, 1, 0})));
  // Worlds with C = 2 other than the declared one stay unrelated.
  EXPECT_FALSE(c.at_least_as_normal(w({0, 0, 0}), w({0, 0, 2})));
}

TEST(Close, RejectsInvalidPatterns) {
  NormalityOrder bad_value;
  bad_value.ranks = {{pat({{"C", 5}}), 0}};
  EXPECT_THROW(close(bad_value, abc()), Error);
  NormalityOrder unknown;
  unknown.pairs = {{pat({{"Q", 0}}), pat({{"A", 0}})}};
  EXPECT_THROW(close(unknown, abc()), Error);
  NormalityOrder repeated;
  repeated.ranks = {{pat({{"A", 0}, {"A", 1}}), 0}};
  EXPECT_THROW(close(repeated, abc()), Error);
}

TEST(Close, IdempotentOnItsOwnDeclarations) {
  NormalityOrder o;
  o.ranks = {{pat({{"A", 1}}), 0}, {pat({{"B", 1}}), 1}};
  o.pairs = {{pat({{"C", 2}}), pat({{"C", 0}})}};
  const auto once = close(o, abc());
  const auto twice = close(once.as_declarations(abc()), abc());
  EXPECT_EQ(once, twice);
}

TEST(Assassin, ActualAndWitnessWorldsAreIncomparable) {
  const auto ext = corpus::model("assassin.cm", "assassin");
  EXPECT_FALSE(ext.at_least_as_normal(w({1, 1, 1}), w({0, 0, 0})));
  EXPECT_FALSE(ext.at_least_as_normal(w({0, 0, 0}), w({1, 1, 1})));
  EXPECT_TRUE(ext.at_least_as_normal(w({1, 0, 1}), w({1, 1, 1})));
  EXPECT_TRUE(ext.at_least_as_normal(w({1, 1, 1}), w({1, 1, 1})));
}

TEST(Doctors, ChainPerDoctor) {
  const auto ext = corpus::model("doctors5.cm", "doctors5");
  // A1..A5, MT1..MT5, BMC
  auto world = [](int assigned, int treats) {
    std::vector<int> v(11, 0);
    if (assigned) v[static_cast<std::size_t>(assigned - 1)] = 1;
    if (treats) v[static_cast<std::size_t>(4 + treats)] = 1;
    v[10] = treats ? 0 : 1;
    return World{v};
  };
  EXPECT_TRUE(ext.at_least_as_normal(world(0, 0), world(2, 2)));
  EXPECT_TRUE(ext.at_least_as_normal(world(2, 2), world(2, 0)));
  EXPECT_TRUE(ext.at_least_as_normal(world(2, 0), world(2, 4)));
  EXPECT_TRUE(ext.at_least_as_normal(world(0, 0), world(2, 4)));
  EXPECT_FALSE(ext.at_least_as_normal(world(2, 0), world(2, 2)));
  EXPECT_FALSE(ext.at_least_as_normal(world(4, 4), world(2, 0)));
}

TEST(ExtendedModel, DefaultsToFlat) {
  const auto ext = corpus::model("assassin.cm", "assassin_flat");
  EXPECT_TRUE(ext.order().is_flat());
  EXPECT_FALSE(ext.declared().has_value());
  EXPECT_TRUE(ext.at_least_as_normal(w({0, 0, 0}), w({1, 1, 1})));
}

TEST(ExtendedModel, WithModelKeepsTheOrderAndChecksTheSignature) {
  const auto ext = corpus::model("assassin.cm", "assassin");
  const auto post = ext.with_model(intervene(ext.model(), Intervention({{"B", 1}})));
  EXPECT_EQ(post.order(), ext.order());
  const auto other = corpus::model("forest_fire.cm", "forest_fire").model();
  EXPECT_THROW((void)ext.with_model(other), Error);
}
