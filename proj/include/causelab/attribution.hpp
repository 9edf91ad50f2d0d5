#ifndef CAUSELAB_ATTRIBUTION_HPP
#define CAUSELAB_ATTRIBUTION_HPP

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "causelab/cause.hpp"
#include "causelab/rational.hpp"

namespace causelab {

struct ScoringStrategy {
  enum class Kind { reciprocal, exponential, weighted, ways_fraction };

  Kind kind = Kind::reciprocal;
  std::map<std::string, Rational> weights;  // weighted only; every endogenous variable

  static ScoringStrategy reciprocal() { return {}; }
  static ScoringStrategy exponential() { return {Kind::exponential, {}}; }
  static ScoringStrategy weighted(std::map<std::string, Rational> w) { return {Kind::weighted, std::move(w)}; }
  static ScoringStrategy ways_fraction() { return {Kind::ways_fraction, {}}; }
};

inline std::string_view strategy_name(ScoringStrategy::Kind k) {
  switch (k) {
    case ScoringStrategy::Kind::reciprocal: return "reciprocal";
    case ScoringStrategy::Kind::exponential: return "exponential";
    case ScoringStrategy::Kind::weighted: return "weighted";
    case ScoringStrategy::Kind::ways_fraction: return "ways";
  }
  return "reciprocal";
}

struct Responsibility {
  Rational value{0};
  /// Changes in the achieving witness; empty for non-causes.
  std::optional<std::size_t> k;
  std::optional<Witness> achieving_witness;
  CauseVerdict verdict;
};

namespace detail {

inline std::vector<Rational> bind_weights(const Signature& sig, const ScoringStrategy& st) {
  std::vector<Rational> w;
  for (const auto& v : sig.endogenous()) {
    auto it = st.weights.find(v.name);
    if (it == st.weights.end())
      throw Error(ErrorCategory::invalid_argument, "weighted strategy has no weight for '" + v.name + "'",
                  v.name);
    if (it->second <= Rational(0))
      throw Error(ErrorCategory::invalid_argument, "weight of '" + v.name + "' must be positive", v.name);
    w.push_back(it->second);
  }
  for (const auto& [name, _] : st.weights) sig.endogenous_index(name);
  return w;
}

}  // namespace detail

/// 0 for non-causes; otherwise the strategy's score of the best witness.
/// Reciprocal 1/(k+1), exponential 1/2^k, weighted 1/(1 + least weight of
/// the changed variables), ways: the share of all-changed settings of a
/// minimal changed set that admit a witness.
inline Responsibility degree_of_responsibility(const ExtendedModel& ext, const Context& ctx,
                                               const CandidateCause& cause, const EventFormula& outcome,
                                               const ScoringStrategy& strategy = {},
                                               const SearchOptions& opt = {}) {
  const auto& sig = ext.model().signature();
  std::vector<Rational> weights;
  if (strategy.kind == ScoringStrategy::Kind::weighted) weights = detail::bind_weights(sig, strategy);

  detail::CauseSearch s(ext, ctx, outcome, opt);
  const auto t = s.bind(cause);
  Responsibility r;
  if (!s.ac1(t)) {
    r.verdict.failed = Condition::ac1;
    r.verdict.sound = !s.sampled();
    r.verdict.stats = s.stats;
    return r;
  }

  if (strategy.kind == ScoringStrategy::Kind::weighted) {
    const auto rest = detail::CauseSearch::rest_of(t, sig.endogenous().size());
    auto weight_of = [&](std::uint32_t mask) {
      Rational sum(0);
      for (std::size_t i = 0; i < rest.size(); ++i)
        if ((mask >> i) & 1u) sum += weights[rest[i]];
      return sum;
    };
    std::vector<std::uint32_t> order = s.masks(rest.size());
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return weight_of(a) < weight_of(b); });
    auto res = s.search(
        t, order, [&](std::uint32_t a, std::uint32_t b) { return weight_of(a) == weight_of(b); }, false);
    const Rational best = weight_of(res.level_key_mask);
    r.verdict = detail::verdict_from(s, t, std::move(res));
    if (r.verdict.is_cause) r.value = Rational(1) / (Rational(1) + best);
  } else {
    r.verdict = detail::verdict_from(s, t, s.search_by_size(t, false));
    if (r.verdict.is_cause) {
      const std::size_t k = r.verdict.min_changes;
      if (strategy.kind == ScoringStrategy::Kind::reciprocal) {
        r.value = Rational(1, static_cast<std::int64_t>(k) + 1);
      } else if (strategy.kind == ScoringStrategy::Kind::exponential) {
        r.value = Rational(1, std::int64_t{1} << k);
      } else if (k == 0) {
        r.value = Rational(1);
      } else {
        const auto rest = detail::CauseSearch::rest_of(t, sig.endogenous().size());
        Rational best(0);
        for (std::uint32_t cmask : s.masks(rest.size())) {
          if (static_cast<std::size_t>(std::popcount(cmask)) < k) continue;
          if (static_cast<std::size_t>(std::popcount(cmask)) > k) break;
          const auto cvars = detail::CauseSearch::members(rest, cmask);
          std::int64_t total = 1;
          for (std::size_t v : cvars) total *= static_cast<std::int64_t>(sig.endogenous()[v].range.size());
          std::int64_t hits = 0;
          s.for_each_change(cvars, [&](const std::vector<int>& wc) {
            if (s.has_witness(t, cmask, wc)) ++hits;
            return true;
          });
          if (hits > 0) best = std::max(best, Rational(hits, total - 1));
        }
        r.value = best;
      }
      r.verdict.stats = s.stats;
    }
  }
  if (r.verdict.is_cause) {
    r.k = r.verdict.min_changes;
    if (!r.verdict.witnesses.empty()) r.achieving_witness = r.verdict.witnesses.front();
  }
  return r;
}

/// One (extended model, context) pair the agent considers possible.
struct Situation {
  ExtendedModel model;
  Context context;
};

/// Finitely many situations with exact probabilities summing to 1.
class EpistemicState {
 public:
  EpistemicState(std::vector<Situation> situations, std::vector<Rational> probabilities)
      : situations_(std::move(situations)), probabilities_(std::move(probabilities)) {
    if (situations_.empty()) throw Error(ErrorCategory::invalid_state, "an epistemic state needs a situation");
    if (situations_.size() != probabilities_.size())
      throw Error(ErrorCategory::invalid_state, "one probability per situation is required");
    Rational sum(0);
    for (const auto& p : probabilities_) {
      if (p < Rational(0)) throw Error(ErrorCategory::invalid_state, "negative probability " + to_string(p));
      sum += p;
    }
    if (sum != Rational(1))
      throw Error(ErrorCategory::invalid_state, "probabilities sum to " + to_string(sum) + ", not 1/1");
    for (const auto& s : situations_) validate_context(s.model.model().signature(), s.context);
  }

  const std::vector<Situation>& situations() const { return situations_; }
  const std::vector<Rational>& probabilities() const { return probabilities_; }

 private:
  std::vector<Situation> situations_;
  std::vector<Rational> probabilities_;
};

struct Blame {
  Rational value{0};
  std::vector<Responsibility> per_situation;
};

/// Expected responsibility of `action` for `outcome`, each situation scored
/// in its post-action model.
inline Blame degree_of_blame(const EpistemicState& state, const Intervention& action,
                             const EventFormula& outcome, const ScoringStrategy& strategy = {},
                             const SearchOptions& opt = {}) {
  const auto& first = state.situations().front().model.model().signature();
  for (const auto& s : state.situations())
    if (!(s.model.model().signature() == first))
      throw Error(ErrorCategory::invalid_state, "situations disagree on the signature");
  const CandidateCause cause(action.settings());
  Blame b;
  for (std::size_t i = 0; i < state.situations().size(); ++i) {
    const auto& s = state.situations()[i];
    const ExtendedModel post = s.model.with_model(intervene(s.model.model(), action));
    auto r = degree_of_responsibility(post, s.context, cause, outcome, strategy, opt);
    b.value += state.probabilities()[i] * r.value;
    b.per_situation.push_back(std::move(r));
  }
  return b;
}

}  // namespace causelab

#endif  // CAUSELAB_ATTRIBUTION_HPP
