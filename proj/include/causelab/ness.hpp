#ifndef CAUSELAB_NESS_HPP
#define CAUSELAB_NESS_HPP

#include <algorithm>
#include <bit>
#include <optional>
#include <utility>
#include <vector>

#include "causelab/cause.hpp"
#include "causelab/formula.hpp"
#include "causelab/model.hpp"

namespace causelab {

/// A consistent set of primitive events (at most one value per variable).
class SufficientSet {
 public:
  SufficientSet() = default;

  explicit SufficientSet(std::vector<PrimitiveEvent> events) : events_(std::move(events)) {
    std::sort(events_.begin(), events_.end());
    events_.erase(std::unique(events_.begin(), events_.end()), events_.end());
    for (std::size_t i = 0; i + 1 < events_.size(); ++i)
      if (events_[i].variable == events_[i + 1].variable)
        throw Error(ErrorCategory::invalid_argument,
                    "inconsistent set: '" + events_[i].variable + "' takes two values", events_[i].variable);
  }

  const std::vector<PrimitiveEvent>& events() const { return events_; }
  bool operator==(const SufficientSet&) const = default;

 private:
  std::vector<PrimitiveEvent> events_;  // sorted by name
};

/// Sufficiency as interventional validity: [S] outcome holds in every context.
inline bool is_sufficient(const CausalModel& model, const SufficientSet& s, const EventFormula& outcome) {
  return valid(model, CausalFormula(Intervention(s.events()), outcome));
}

/// Some S of actual events containing `a`, sufficient for `outcome`, whose
/// remainder S minus {a} is not. Sets are tried by size, then declaration
/// order; the first one found is returned.
inline std::optional<SufficientSet> is_ness_cause(const CausalModel& model, const Context& ctx,
                                                  const PrimitiveEvent& a, const EventFormula& outcome) {
  const auto& sig = model.signature();
  const auto ai = sig.bind_setting(a);
  (void)BoundFormula(outcome, sig);  // validates the outcome
  const World actual = solve(model, ctx);
  if (actual.values[ai] != a.value) return std::nullopt;

  std::vector<PrimitiveEvent> others;
  for (std::size_t v = 0; v < sig.endogenous().size(); ++v)
    if (v != ai) others.push_back({sig.endogenous()[v].name, actual.values[v]});
  if (others.size() > 24) throw CapExceeded("too many events for the NESS search");

  for (std::uint32_t mask : detail::ordered_masks(others.size())) {
    std::vector<PrimitiveEvent> rest;
    for (std::size_t i = 0; i < others.size(); ++i)
      if ((mask >> i) & 1u) rest.push_back(others[i]);
    std::vector<PrimitiveEvent> with_a = rest;
    with_a.push_back(a);
    SufficientSet s(std::move(with_a));
    if (is_sufficient(model, s, outcome) && !is_sufficient(model, SufficientSet(std::move(rest)), outcome))
      return s;
  }
  return std::nullopt;
}

}  // namespace causelab

#endif  // CAUSELAB_NESS_HPP
