#include <gtest/gtest.h>

#include <filesystem>

#include "causelab/causelab.hpp"
#include "support/corpus.hpp"
#include "support/oracle.hpp"
#include "support/random_models.hpp"

using namespace causelab;

namespace {

constexpr std::uint64_t kSeeds = 250;

std::map<std::size_t, int> bind(const Signature& sig, const Conjunction& c) {
  std::map<std::size_t, int> x;
  for (const auto& s : c) x[sig.bind_setting(s)] = s.value;
  return x;
}

oracle::Admissible admissible(const ExtendedModel& ext) {
  if (ext.order().is_flat()) return oracle::admit_all;
  return [&ext](const World& w, const World& actual) { return ext.at_least_as_normal(w, actual); };
}

/// Smallest weight sum over the oracle's witnesses, as 1/(1+sum).
Rational weighted_score(const oracle::Oracle& o, const std::map<std::size_t, int>& x,
                        const std::vector<Rational>& weights) {
  if (!o.is_cause(x)) return Rational(0);
  std::optional<Rational> best;
  for (const auto& w : o.witnesses(x)) {
    Rational sum(0);
    for (auto v : w.changed) sum += weights[v];
    if (!best || sum < *best) best = sum;
  }
  return Rational(1) / (Rational(1) + *best);
}

/// Compares every score the engine computes for one query against the oracle.
void compare(const ExtendedModel& ext, const Context& ctx, const Conjunction& cause, const EventFormula& phi) {
  const auto& m = ext.model();
  const oracle::Oracle o(m, ctx, phi, admissible(ext));
  const auto x = bind(m.signature(), cause);
  const CandidateCause c(cause);

  const auto verdict = is_actual_cause(ext, ctx, c, phi);
  ASSERT_EQ(verdict.is_cause, o.is_cause(x));
  const auto k = o.min_changes(x);
  if (verdict.is_cause) {
    ASSERT_TRUE(k.has_value());
    EXPECT_EQ(verdict.min_changes, *k);
  }

  EXPECT_EQ(degree_of_responsibility(ext, ctx, c, phi).value, o.reciprocal(x));
  EXPECT_EQ(degree_of_responsibility(ext, ctx, c, phi, ScoringStrategy::ways_fraction()).value, o.ways(x));
  EXPECT_EQ(degree_of_responsibility(ext, ctx, c, phi, ScoringStrategy::exponential()).value,
            k ? Rational(1, std::int64_t{1} << *k) : Rational(0));

  std::map<std::string, Rational> named;
  std::vector<Rational> weights;
  for (std::size_t v = 0; v < m.endogenous_count(); ++v) {
    weights.push_back(Rational(static_cast<std::int64_t>(v % 3) + 1, 2));
    named[m.signature().endogenous()[v].name] = weights.back();
  }
  EXPECT_EQ(degree_of_responsibility(ext, ctx, c, phi, ScoringStrategy::weighted(named)).value,
            weighted_score(o, x, weights));
}

std::string describe(const CausalModel& m, const Context& ctx, const Conjunction& c, const EventFormula& phi) {
  std::string s = print(m) + "\nctx";
  for (int v : ctx.values) s += " " + std::to_string(v);
  return s + "\ncause " + print_conjunction(c) + " outcome " + print(phi);
}

}  // namespace

TEST(OracleAgreement, SmallCorpusModels) {
  std::size_t checked = 0;
  for (const auto& entry : std::filesystem::directory_iterator(corpus::dir())) {
    if (entry.path().extension() != ".cm") continue;
    const auto doc = parse_document(Workspace::read_file(entry.path()), entry.path().string());
    for (const auto& decl : doc.models) {
      const auto& m = decl.model;
      if (m.endogenous_count() > oracle::kMaxEndogenous) continue;
      const ExtendedModel ext = decl.extended();
      for (const auto& ctx : enumerate_contexts(m)) {
        const World actual = solve(m, ctx);
        for (std::size_t o = 0; o < m.endogenous_count(); ++o) {
          const auto& out = m.signature().endogenous()[o];
          const auto phi = event(out.name, actual.values[o]);
          for (std::size_t a = 0; a < m.endogenous_count(); ++a) {
            if (a == o) continue;
            const Conjunction c{{m.signature().endogenous()[a].name, actual.values[a]}};
            SCOPED_TRACE(describe(m, ctx, c, phi));
            compare(ext, ctx, c, phi);
            ++checked;
            for (std::size_t b = a + 1; b < m.endogenous_count(); ++b) {
              if (b == o) continue;
              Conjunction pair = c;
              pair.push_back({m.signature().endogenous()[b].name, actual.values[b]});
              compare(ext, ctx, pair, phi);
            }
          }
        }
      }
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(OracleAgreement, RandomModelsFlat) {
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    randmodel::Generator g(seed);
    const auto m = g.model();
    const auto ctx = g.context(m);
    const World actual = solve(m, ctx);
    Conjunction c;
    const auto e = g.event(m);
    // Mostly actual values so AC1 holds and the interesting conditions run.
    c.push_back({e.variable, g.coin(0.85) ? actual.values[m.signature().endogenous_index(e.variable)] : e.value});
    if (g.coin(0.3)) {
      const auto f = g.event(m);
      if (f.variable != e.variable) c.push_back({f.variable, actual.values[m.signature().endogenous_index(f.variable)]});
    }
    const auto phi = g.formula(m);
    SCOPED_TRACE("seed " + std::to_string(seed) + "\n" + describe(m, ctx, c, phi));
    compare(ExtendedModel(m), ctx, c, phi);
  }
}

TEST(OracleAgreement, RandomModelsWithNormality) {
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    randmodel::Generator g(seed + 10'000);
    const auto m = g.model();
    const ExtendedModel ext(m, g.order(m));
    const auto ctx = g.context(m);
    const World actual = solve(m, ctx);
    const auto e = g.event(m);
    const Conjunction c{{e.variable, actual.values[m.signature().endogenous_index(e.variable)]}};
    const auto phi = g.formula(m);
    SCOPED_TRACE("seed " + std::to_string(seed) + "\n" + describe(m, ctx, c, phi));
    compare(ext, ctx, c, phi);
  }
}

TEST(OracleAgreement, FindAllCausesMatchesSingletonVerdicts) {
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    randmodel::Generator g(seed + 20'000);
    const auto m = g.model();
    const auto ctx = g.context(m);
    const auto phi = g.formula(m);
    const World actual = solve(m, ctx);
    const oracle::Oracle o(m, ctx, phi);
    const auto mentioned = phi.variables();
    std::vector<Conjunction> expected;
    if (holds(actual, m.signature(), phi))
      for (std::size_t v = 0; v < m.endogenous_count(); ++v) {
        const auto& name = m.signature().endogenous()[v].name;
        if (!mentioned.count(name) && o.is_cause({{v, actual.values[v]}}))
          expected.push_back({{name, actual.values[v]}});
      }
    std::vector<Conjunction> got;
    for (const auto& [c, v] : find_all_causes(ExtendedModel(m), ctx, phi, 1)) got.push_back(c.settings());
    EXPECT_EQ(got, expected) << "seed " << seed;
  }
}

TEST(OracleAgreement, BlameOverRandomStates) {
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    randmodel::Generator g(seed + 30'000, {.min_endo = 2, .max_endo = 4});
    const auto m = g.model();
    const int n = g.uniform(1, 3);
    std::vector<Situation> sits;
    std::vector<std::pair<CausalModel, Context>> plain;
    std::vector<Rational> probs;
    std::int64_t left = 12;
    for (int i = 0; i < n; ++i) {
      const auto ctx = g.context(m);
      sits.push_back({ExtendedModel(m), ctx});
      plain.emplace_back(m, ctx);
      const std::int64_t share = i + 1 == n ? left : g.uniform(0, static_cast<int>(left));
      probs.push_back(Rational(share, 12));
      left -= share;
    }
    auto action = g.intervention(m, 2);
    if (action.settings().empty()) {
      const auto e = g.event(m);
      action = Intervention({e});
    }
    const auto phi = g.formula(m);
    const auto b = degree_of_blame(EpistemicState(sits, probs), action, phi);
    EXPECT_EQ(b.value, oracle::blame(plain, probs, action, phi)) << "seed " << seed << "\n" << print(m);
  }
}

TEST(OracleGuard, RefusesLargeModels) {
  randmodel::Generator g(7, {.min_endo = 6, .max_endo = 6});
  const auto m = g.model();
  EXPECT_THROW(oracle::Oracle(m, g.context(m), g.formula(m)), std::length_error);
}

TEST(OracleAgreement, FiveVotersWithDisjunctiveOutcome) {
  std::vector<Variable> exo, endo;
  std::vector<Equation> eqs;
  for (int i = 1; i <= 5; ++i) {
    exo.push_back({"U" + std::to_string(i), {0, 1}});
    endo.push_back({"V" + std::to_string(i), {0, 1}});
    eqs.push_back({"V" + std::to_string(i), Expr::var("U" + std::to_string(i))});
  }
  const CausalModel m("five", Signature(exo, endo), eqs);
  // Majority as a disjunction of every three-voter conjunction.
  std::optional<EventFormula> phi;
  for (int a = 1; a <= 5; ++a)
    for (int b = a + 1; b <= 5; ++b)
      for (int c = b + 1; c <= 5; ++c) {
        auto t = event("V" + std::to_string(a), 1) && event("V" + std::to_string(b), 1) &&
                 event("V" + std::to_string(c), 1);
        phi = phi ? (*phi || t) : t;
      }
  const Context unanimous{{1, 1, 1, 1, 1}};
  const oracle::Oracle o(m, unanimous, *phi);
  EXPECT_EQ(o.reciprocal({{0, 1}}), Rational(1, 3));
  compare(ExtendedModel(m), unanimous, {{"V1", 1}}, *phi);
  EXPECT_EQ(degree_of_responsibility(ExtendedModel(m), Context{{1, 1, 1, 1, 0}}, CandidateCause{{"V1", 1}}, *phi)
                .value,
            Rational(1, 2));
}
