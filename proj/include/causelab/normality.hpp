#ifndef CAUSELAB_NORMALITY_HPP
#define CAUSELAB_NORMALITY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "causelab/model.hpp"

namespace causelab {

/// Partial assignment to endogenous variables; matches every world that
/// agrees on the listed variables.
struct WorldPattern {
  std::vector<Setting> settings;
  bool operator==(const WorldPattern&) const = default;
};

/// `rank [..] = r`: matching worlds get rank r (lower = more normal). When
/// several declarations match a world, the first one in source order wins.
struct RankDecl {
  WorldPattern pattern;
  int rank = 0;
  bool operator==(const RankDecl&) const = default;
};

/// `[p] >= [q]`: every s matching p is at least as normal as every t
/// matching q that agrees with s on the variables neither pattern mentions.
struct PairDecl {
  WorldPattern better;
  WorldPattern worse;
  bool operator==(const PairDecl&) const = default;
};

/// Declared normality information, before closure.
struct NormalityOrder {
  std::vector<RankDecl> ranks;
  std::vector<PairDecl> pairs;
  bool operator==(const NormalityOrder&) const = default;
};

/// The reflexive-transitive closure of a NormalityOrder over one signature.
/// Worlds that no declaration mentions are comparable only to themselves.
class ClosedOrder {
 public:
  /// Cap on the worlds a declaration set may mention.
  static constexpr std::size_t kMaxWorlds = 8192;

  /// Every world at least as normal as every other.
  static ClosedOrder flat() {
    ClosedOrder c;
    c.flat_ = true;
    return c;
  }

  bool is_flat() const { return flat_; }
  std::size_t mentioned_worlds() const { return worlds_.size(); }

  bool at_least_as_normal(const World& s, const World& t) const {
    if (flat_ || s == t) return true;
    auto i = index_of(s.values);
    auto j = index_of(t.values);
    if (!i || !j) return false;
    return reach_[*i][*j];
  }

  /// Index of a mentioned world, for repeated queries against one world.
  std::optional<std::size_t> index_of(const std::vector<int>& world) const {
    auto it = index_.find(world);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool at_least_as_normal_index(std::size_t i, std::size_t j) const { return reach_[i][j]; }

  /// The closed relation as explicit full-world pairs (including the
  /// reflexive pair of each mentioned world). Closing it again yields an
  /// equal relation.
  NormalityOrder as_declarations(const Signature& sig) const {
    NormalityOrder out;
    if (flat_) {
      out.ranks.push_back({WorldPattern{}, 0});
      return out;
    }
    auto full = [&](const std::vector<int>& w) {
      WorldPattern p;
      for (std::size_t v = 0; v < w.size(); ++v) p.settings.push_back({sig.endogenous()[v].name, w[v]});
      return p;
    };
    for (std::size_t i = 0; i < worlds_.size(); ++i)
      for (std::size_t j = 0; j < worlds_.size(); ++j)
        if (reach_[i][j]) out.pairs.push_back({full(worlds_[i]), full(worlds_[j])});
    return out;
  }

  /// Non-reflexive pairs of the relation, sorted; the canonical content.
  std::vector<std::pair<World, World>> strict_pairs() const {
    std::vector<std::pair<World, World>> out;
    for (std::size_t i = 0; i < worlds_.size(); ++i)
      for (std::size_t j = 0; j < worlds_.size(); ++j)
        if (i != j && reach_[i][j]) out.push_back({World{worlds_[i]}, World{worlds_[j]}});
    std::sort(out.begin(), out.end());
    return out;
  }

  bool operator==(const ClosedOrder& o) const {
    if (flat_ != o.flat_) return false;
    return flat_ || strict_pairs() == o.strict_pairs();
  }

  friend ClosedOrder close(const NormalityOrder& order, const Signature& sig);

 private:
  using Bits = std::vector<bool>;

  bool flat_ = false;
  std::vector<std::vector<int>> worlds_;  // sorted
  std::map<std::vector<int>, std::size_t> index_;
  std::vector<Bits> reach_;
};

namespace detail {

struct BoundPattern {
  std::vector<int> value;  // kFree where unmentioned
};

inline BoundPattern bind_pattern(const WorldPattern& p, const Signature& sig) {
  BoundPattern b{std::vector<int>(sig.endogenous().size(), kFree)};
  for (const auto& s : p.settings) {
    const auto idx = sig.bind_setting(s);
    if (b.value[idx] != kFree)
      throw Error(ErrorCategory::duplicate_name,
                  "variable '" + s.variable + "' appears twice in a world pattern", s.variable);
    b.value[idx] = s.value;
  }
  return b;
}

inline bool matches(const BoundPattern& p, const std::vector<int>& w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (p.value[i] != kFree && p.value[i] != w[i]) return false;
  return true;
}

/// Calls f(world) for each completion of `base` over the kFree positions.
template <typename F>
void for_each_completion(const Signature& sig, std::vector<int> base, F&& f) {
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < base.size(); ++i)
    if (base[i] == kFree) open.push_back(i);
  std::vector<std::size_t> digit(open.size(), 0);
  for (std::size_t k = 0; k < open.size(); ++k) base[open[k]] = sig.endogenous()[open[k]].range[0];
  while (true) {
    f(static_cast<const std::vector<int>&>(base));
    std::size_t k = 0;
    for (; k < open.size(); ++k) {
      const auto& range = sig.endogenous()[open[k]].range;
      if (++digit[k] < range.size()) {
        base[open[k]] = range[digit[k]];
        break;
      }
      digit[k] = 0;
      base[open[k]] = range[0];
    }
    if (k == open.size()) return;
  }
}

inline std::uint64_t completion_count(const Signature& sig, const BoundPattern& p) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < p.value.size(); ++i)
    if (p.value[i] == kFree) {
      n *= sig.endogenous()[i].range.size();
      if (n > ClosedOrder::kMaxWorlds) return n;
    }
  return n;
}

}  // namespace detail

/// Materializes the closure over the worlds the declarations mention.
inline ClosedOrder close(const NormalityOrder& order, const Signature& sig) {
  using detail::BoundPattern;
  std::vector<BoundPattern> rank_pats;
  std::vector<std::pair<BoundPattern, BoundPattern>> pair_pats;
  for (const auto& r : order.ranks) rank_pats.push_back(detail::bind_pattern(r.pattern, sig));
  for (const auto& p : order.pairs)
    pair_pats.emplace_back(detail::bind_pattern(p.better, sig), detail::bind_pattern(p.worse, sig));

  std::set<std::vector<int>> mentioned;
  auto mention = [&](const BoundPattern& p) {
    if (detail::completion_count(sig, p) > ClosedOrder::kMaxWorlds)
      throw Error(ErrorCategory::resource_cap, "normality declarations mention too many worlds");
    detail::for_each_completion(sig, p.value, [&](const std::vector<int>& w) {
      mentioned.insert(w);
      if (mentioned.size() > ClosedOrder::kMaxWorlds)
        throw Error(ErrorCategory::resource_cap, "normality declarations mention too many worlds");
    });
  };
  for (const auto& p : rank_pats) mention(p);
  for (const auto& [a, b] : pair_pats) {
    mention(a);
    mention(b);
  }

  ClosedOrder c;
  c.worlds_.assign(mentioned.begin(), mentioned.end());
  const std::size_t n = c.worlds_.size();
  for (std::size_t i = 0; i < n; ++i) c.index_.emplace(c.worlds_[i], i);

  // Graph: world nodes 0..n-1, then one node per distinct rank. A ranked
  // world points at its rank node; each rank node points at its worlds and
  // at the next rank up.
  std::vector<int> rank_of(n, kFree);
  std::set<int> distinct;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < rank_pats.size(); ++r)
      if (detail::matches(rank_pats[r], c.worlds_[i])) {
        rank_of[i] = order.ranks[r].rank;
        distinct.insert(rank_of[i]);
        break;
      }
  const std::vector<int> levels(distinct.begin(), distinct.end());
  auto level_node = [&](int rank) {
    return n + static_cast<std::size_t>(std::lower_bound(levels.begin(), levels.end(), rank) - levels.begin());
  };
  std::vector<std::vector<std::size_t>> edges(n + levels.size());
  for (std::size_t i = 0; i < n; ++i)
    if (rank_of[i] != kFree) {
      edges[i].push_back(level_node(rank_of[i]));
      edges[level_node(rank_of[i])].push_back(i);
    }
  for (std::size_t l = 0; l + 1 < levels.size(); ++l) edges[n + l].push_back(n + l + 1);

  for (const auto& [better, worse] : pair_pats) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& s = c.worlds_[i];
      if (!detail::matches(better, s)) continue;
      // t copies s off both patterns, takes worse's values, and ranges
      // freely over the variables only `better` mentions.
      std::vector<int> base(s.size());
      for (std::size_t v = 0; v < s.size(); ++v) {
        if (worse.value[v] != kFree) base[v] = worse.value[v];
        else if (better.value[v] != kFree) base[v] = kFree;
        else base[v] = s[v];
      }
      detail::for_each_completion(sig, base, [&](const std::vector<int>& t) {
        edges[i].push_back(c.index_.at(t));
      });
    }
  }

  c.reach_.assign(n, ClosedOrder::Bits(n, false));
  std::vector<std::size_t> stack;
  std::vector<bool> seen(edges.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), false);
    stack.assign(1, i);
    seen[i] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      if (v < n) c.reach_[i][v] = true;
      for (std::size_t w : edges[v])
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
  }
  return c;
}

/// A causal model with a closed normality order. Without declarations the
/// order is flat, so the extended definition coincides with the preliminary
/// one.
class ExtendedModel {
 public:
  ExtendedModel() : order_(std::make_shared<const ClosedOrder>(ClosedOrder::flat())) {}

  explicit ExtendedModel(CausalModel model)
      : model_(std::move(model)), order_(std::make_shared<const ClosedOrder>(ClosedOrder::flat())) {}

  ExtendedModel(CausalModel model, NormalityOrder declared)
      : model_(std::move(model)),
        declared_(std::move(declared)),
        order_(std::make_shared<const ClosedOrder>(close(*declared_, model_.signature()))) {}

  /// Same order, different equations (over the same signature).
  ExtendedModel with_model(CausalModel model) const {
    if (!(model.signature() == model_.signature()))
      throw Error(ErrorCategory::invalid_state, "signature mismatch");
    ExtendedModel out = *this;
    out.model_ = std::move(model);
    return out;
  }

  const CausalModel& model() const { return model_; }
  const std::optional<NormalityOrder>& declared() const { return declared_; }
  const ClosedOrder& order() const { return *order_; }

  bool at_least_as_normal(const World& s, const World& t) const {
    return order_->at_least_as_normal(s, t);
  }

 private:
  CausalModel model_;
  std::optional<NormalityOrder> declared_;
  std::shared_ptr<const ClosedOrder> order_;
};

}  // namespace causelab

#endif  // CAUSELAB_NORMALITY_HPP
