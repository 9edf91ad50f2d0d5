#ifndef CAUSELAB_CAUSE_HPP
#define CAUSELAB_CAUSE_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "causelab/formula.hpp"
#include "causelab/model.hpp"
#include "causelab/normality.hpp"
#include "causelab/rational.hpp"

namespace causelab {

enum class Semantics { extended, preliminary };

struct SearchOptions {
  Semantics semantics = Semantics::extended;
  /// Exact search refuses models with more endogenous variables than this.
  std::size_t max_vars = 12;
  /// Above the cap: throw (exact) or sample the AC2(b) subsets (unsound).
  bool exact = true;
  std::size_t samples = 2048;
  std::uint64_t seed = 1;
  /// Witnesses stored in a verdict; the count is always complete.
  std::size_t max_witnesses = std::numeric_limits<std::size_t>::max();
  std::size_t max_failures = 16;
};

struct SearchStats {
  std::uint64_t solves = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t changed_sets = 0;
  std::uint64_t ac2a_checks = 0;
  std::uint64_t ac2b_checks = 0;
};

/// Nonempty conjunction of primitive events over distinct variables.
class CandidateCause {
 public:
  explicit CandidateCause(Conjunction conjuncts) : conjuncts_(std::move(conjuncts)) {
    if (conjuncts_.empty()) throw Error(ErrorCategory::invalid_argument, "a cause needs at least one conjunct");
    for (std::size_t i = 0; i < conjuncts_.size(); ++i)
      for (std::size_t j = i + 1; j < conjuncts_.size(); ++j)
        if (conjuncts_[i].variable == conjuncts_[j].variable)
          throw Error(ErrorCategory::duplicate_name,
                      "variable '" + conjuncts_[i].variable + "' appears twice in a cause",
                      conjuncts_[i].variable);
  }
  CandidateCause(std::initializer_list<Setting> s) : CandidateCause(Conjunction(s)) {}

  const Conjunction& settings() const { return conjuncts_; }
  std::size_t size() const { return conjuncts_.size(); }
  bool operator==(const CandidateCause&) const = default;

 private:
  Conjunction conjuncts_;
};

/// The partition and settings certifying AC2. W is the set of variables in
/// `w`; Z is everything else.
struct Witness {
  Conjunction x_prime;
  Conjunction w;  // declaration order
  std::size_t changes = 0;
  World world;  // solution under [X<-x', W<-w]

  std::vector<std::string> w_set() const {
    std::vector<std::string> out;
    for (const auto& s : w) out.push_back(s.variable);
    return out;
  }
  bool operator==(const Witness&) const = default;
};

enum class Condition { none, ac1, ac2a, normality, ac2b, ac3 };

inline std::string_view condition_name(Condition c) {
  switch (c) {
    case Condition::none: return "none";
    case Condition::ac1: return "AC1";
    case Condition::ac2a: return "AC2(a)";
    case Condition::normality: return "normality";
    case Condition::ac2b: return "AC2(b)";
    case Condition::ac3: return "AC3";
  }
  return "none";
}

/// One (W', Z') instance under which a witness fails AC2(b).
struct Ac2bFailure {
  Witness witness;
  Conjunction w_prime;  // values from w
  Conjunction z_prime;  // actual values
};

struct CauseVerdict {
  bool is_cause = false;
  /// AC2 witnesses with the minimal change count, in search order.
  std::vector<Witness> witnesses;
  std::size_t witness_count = 0;
  /// Change count of the minimal witnesses; meaningful when is_cause.
  std::size_t min_changes = 0;
  Condition failed = Condition::none;
  std::vector<Ac2bFailure> ac2b_failures;
  std::optional<Conjunction> minimal_subcause;
  /// False only when sampling replaced the exhaustive AC2(b) check.
  bool sound = true;
  SearchStats stats;
};

namespace detail {

struct PinsHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::uint32_t>(x);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Bitmasks over n elements, ordered by size then by the lexicographic
/// order of their sorted index lists.
inline std::vector<std::uint32_t> ordered_masks(std::size_t n) {
  std::vector<std::uint32_t> masks(std::size_t{1} << n);
  for (std::uint32_t m = 0; m < masks.size(); ++m) masks[m] = m;
  auto lex_less = [](std::uint32_t a, std::uint32_t b) {
    while (a && b) {
      const int ia = std::countr_zero(a);
      const int ib = std::countr_zero(b);
      if (ia != ib) return ia < ib;
      a &= a - 1;
      b &= b - 1;
    }
    return a == 0 && b != 0;
  };
  std::sort(masks.begin(), masks.end(), [&](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : lex_less(a, b);
  });
  return masks;
}

struct Target {
  std::vector<std::size_t> xs;  // ascending
  std::vector<int> xv;
};

/// Shared state for one (model, context, outcome) triple: the actual world,
/// a memo of outcome truth per intervention, and the ordered subset tables.
class CauseSearch {
 public:
  static constexpr std::size_t kCacheLimit = std::size_t{1} << 20;

  CauseSearch(const ExtendedModel& ext, const Context& ctx, const EventFormula& outcome,
              const SearchOptions& opt)
      : ext_(ext), ctx_(ctx), opt_(opt), phi_(outcome, ext.model().signature()), rng_(opt.seed) {
    validate_context(ext.model().signature(), ctx);
    const std::size_t n = ext.model().endogenous_count();
    if (n > opt.max_vars) {
      if (opt.exact)
        throw CapExceeded("model has " + std::to_string(n) +
                          " endogenous variables, above the exact-search cap of " +
                          std::to_string(opt.max_vars));
      sampled_ = true;
    }
    if (n > 30) throw CapExceeded("model is too large to search");
    for (const auto& name : outcome.variables()) outcome_vars_.push_back(ext.model().signature().endogenous_index(name));
    actual_.assign(n, 0);
    ext.model().solve_into(ctx.values, {}, actual_);
    ++stats.solves;
    use_normality_ = opt.semantics == Semantics::extended && !ext.order().is_flat();
    if (use_normality_) actual_index_ = ext.order().index_of(actual_);
    scratch_.assign(n, 0);
  }

  SearchStats stats;

  const std::vector<int>& actual() const { return actual_; }
  bool sampled() const { return sampled_; }
  bool outcome_actual() const { return phi_.eval(actual_); }
  const Signature& sig() const { return ext_.model().signature(); }

  Target bind(const CandidateCause& c) const {
    std::vector<std::pair<std::size_t, int>> v;
    for (const auto& s : c.settings()) v.emplace_back(sig().bind_setting(s), s.value);
    std::sort(v.begin(), v.end());
    Target t;
    for (auto [i, x] : v) {
      t.xs.push_back(i);
      t.xv.push_back(x);
    }
    return t;
  }

  bool ac1(const Target& t) const {
    for (std::size_t i = 0; i < t.xs.size(); ++i)
      if (actual_[t.xs[i]] != t.xv[i]) return false;
    return phi_.eval(actual_);
  }

  /// Truth of the outcome under `pins`, memoized.
  bool phi(const std::vector<int>& pins) {
    auto it = cache_.find(pins);
    if (it != cache_.end()) {
      ++stats.cache_hits;
      return it->second;
    }
    ext_.model().solve_into(ctx_.values, pins, scratch_);
    ++stats.solves;
    const bool r = phi_.eval(scratch_);
    if (cache_.size() < kCacheLimit) cache_.emplace(pins, r);
    return r;
  }

  std::vector<int> world(const std::vector<int>& pins) {
    std::vector<int> w(actual_.size());
    ext_.model().solve_into(ctx_.values, pins, w);
    ++stats.solves;
    return w;
  }

  bool admissible(const std::vector<int>& w) const {
    if (!use_normality_) return true;
    if (w == actual_) return true;
    if (!actual_index_) return false;
    auto i = ext_.order().index_of(w);
    return i && ext_.order().at_least_as_normal_index(*i, *actual_index_);
  }

  const std::vector<std::uint32_t>& masks(std::size_t n) {
    if (mask_tables_.size() <= n) mask_tables_.resize(n + 1);
    if (mask_tables_[n].empty()) mask_tables_[n] = ordered_masks(n);
    return mask_tables_[n];
  }

  /// Result of examining one changed set C with values w_C.
  struct CsetResult {
    bool ac2a = false;        // some (U, x') falsifies the outcome
    bool admissible = false;  // ... with an admissible witness world
    bool ac2b = false;
    std::size_t witnesses = 0;
    std::optional<Ac2bFailure> failure;
  };

  /// `rest` = V minus X (ascending); C and U are masks over rest. When `out`
  /// is null, stops at the first witness.
  CsetResult test_cset(const Target& t, const std::vector<std::size_t>& rest, std::uint32_t cmask,
                       const std::vector<int>& wc, std::vector<Witness>* out, std::size_t store_limit) {
    ++stats.changed_sets;
    CsetResult r;
    std::vector<std::size_t> cvars, free;
    for (std::size_t i = 0; i < rest.size(); ++i)
      ((cmask >> i) & 1u ? cvars : free).push_back(rest[i]);

    std::vector<int> pins(actual_.size(), kFree);
    for (std::size_t i = 0; i < cvars.size(); ++i) pins[cvars[i]] = wc[i];

    // Alternative settings x' of X, lexicographic, skipping x' = x.
    std::vector<std::vector<int>> xprimes;
    std::vector<std::size_t> digit(t.xs.size(), 0);
    for (bool more = true; more;) {
      std::vector<int> xp(t.xs.size());
      for (std::size_t i = 0; i < t.xs.size(); ++i) xp[i] = sig().endogenous()[t.xs[i]].range[digit[i]];
      if (xp != t.xv) xprimes.push_back(std::move(xp));
      more = false;
      for (std::size_t k = t.xs.size(); k-- > 0;) {
        if (++digit[k] < sig().endogenous()[t.xs[k]].range.size()) {
          more = true;
          break;
        }
        digit[k] = 0;
      }
    }

    struct Hit {
      std::uint32_t umask;
      std::size_t xp;
      std::vector<int> world;
    };
    std::vector<Hit> hits;
    for (std::uint32_t umask : masks(free.size())) {
      for (std::size_t i = 0; i < free.size(); ++i)
        pins[free[i]] = (umask >> i) & 1u ? actual_[free[i]] : kFree;
      for (std::size_t xi = 0; xi < xprimes.size(); ++xi) {
        for (std::size_t i = 0; i < t.xs.size(); ++i) pins[t.xs[i]] = xprimes[xi][i];
        ++stats.ac2a_checks;
        if (phi(pins)) continue;
        r.ac2a = true;
        std::vector<int> w = world(pins);
        if (!admissible(w)) continue;
        r.admissible = true;
        hits.push_back({umask, xi, std::move(w)});
        if (!out) break;
      }
      if (!out && !hits.empty()) break;
    }
    if (hits.empty()) return r;

    const auto fail = ac2b(t, cvars, wc, free);
    r.ac2b = !fail.has_value();
    auto make = [&](const Hit& h) {
      Witness w;
      for (std::size_t i = 0; i < t.xs.size(); ++i)
        w.x_prime.push_back({sig().endogenous()[t.xs[i]].name, xprimes[h.xp][i]});
      for (std::size_t v : rest) {
        const auto pos = static_cast<std::size_t>(std::find(rest.begin(), rest.end(), v) - rest.begin());
        if ((cmask >> pos) & 1u) {
          const auto ci = static_cast<std::size_t>(std::find(cvars.begin(), cvars.end(), v) - cvars.begin());
          w.w.push_back({sig().endogenous()[v].name, wc[ci]});
        } else {
          const auto fi = static_cast<std::size_t>(std::find(free.begin(), free.end(), v) - free.begin());
          if ((h.umask >> fi) & 1u) w.w.push_back({sig().endogenous()[v].name, actual_[v]});
        }
      }
      w.changes = cvars.size();
      w.world = World{h.world};
      return w;
    };
    if (fail) {
      const Hit& h = hits.front();
      Ac2bFailure f;
      f.witness = make(h);
      const auto& [cprime, pmask] = *fail;
      for (std::size_t v : rest) {
        const auto ci = std::find(cvars.begin(), cvars.end(), v);
        if (ci != cvars.end()) {
          const auto idx = static_cast<std::size_t>(ci - cvars.begin());
          if ((cprime >> idx) & 1u) f.w_prime.push_back({sig().endogenous()[v].name, wc[idx]});
          continue;
        }
        const auto fi = static_cast<std::size_t>(std::find(free.begin(), free.end(), v) - free.begin());
        if (!((pmask >> fi) & 1u)) continue;
        if ((h.umask >> fi) & 1u) f.w_prime.push_back({sig().endogenous()[v].name, actual_[v]});
        else f.z_prime.push_back({sig().endogenous()[v].name, actual_[v]});
      }
      r.failure = std::move(f);
      return r;
    }
    r.witnesses = hits.size();
    if (out)
      for (const auto& h : hits) {
        if (out->size() >= store_limit) break;
        out->push_back(make(h));
      }
    return r;
  }

  /// First (C', P) with [X<-x, C'<-w_C, P<-actual] not phi, where C' ranges
  /// over subsets of C and P over subsets of V minus X minus C. Order: P by
  /// size then lex, then C'.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> ac2b(const Target& t,
                                                              const std::vector<std::size_t>& cvars,
                                                              const std::vector<int>& wc,
                                                              const std::vector<std::size_t>& free) {
    std::vector<int> pins(actual_.size(), kFree);
    for (std::size_t i = 0; i < t.xs.size(); ++i) pins[t.xs[i]] = t.xv[i];
    auto check = [&](std::uint32_t cprime, std::uint32_t pmask) {
      for (std::size_t i = 0; i < cvars.size(); ++i) pins[cvars[i]] = (cprime >> i) & 1u ? wc[i] : kFree;
      for (std::size_t i = 0; i < free.size(); ++i)
        pins[free[i]] = (pmask >> i) & 1u ? actual_[free[i]] : kFree;
      ++stats.ac2b_checks;
      return phi(pins);
    };
    if (sampled_) {
      std::uniform_int_distribution<std::uint32_t> cdist(0, (1u << cvars.size()) - 1);
      std::uniform_int_distribution<std::uint32_t> pdist(0, (1u << free.size()) - 1);
      if (!check((1u << cvars.size()) - 1, 0)) return std::pair{(1u << cvars.size()) - 1, 0u};
      for (std::size_t s = 0; s < opt_.samples; ++s) {
        const auto c = cdist(rng_), p = pdist(rng_);
        if (!check(c, p)) return std::pair{c, p};
      }
      return std::nullopt;
    }
    const auto& cm = masks(cvars.size());
    for (std::uint32_t pmask : masks(free.size()))
      for (std::uint32_t cprime : cm)
        if (!check(cprime, pmask)) return std::pair{cprime, pmask};
    return std::nullopt;
  }

  /// Calls f(w_C) for every all-changed setting of C, lexicographically.
  /// Stops early when f returns false.
  template <typename F>
  void for_each_change(const std::vector<std::size_t>& cvars, F&& f) {
    std::vector<std::vector<int>> options(cvars.size());
    for (std::size_t i = 0; i < cvars.size(); ++i) {
      for (int v : sig().endogenous()[cvars[i]].range)
        if (v != actual_[cvars[i]]) options[i].push_back(v);
      if (options[i].empty()) return;
    }
    std::vector<std::size_t> digit(cvars.size(), 0);
    std::vector<int> wc(cvars.size());
    while (true) {
      for (std::size_t i = 0; i < cvars.size(); ++i) wc[i] = options[i][digit[i]];
      if (!f(static_cast<const std::vector<int>&>(wc))) return;
      std::size_t k = cvars.size();
      bool done = true;
      while (k > 0) {
        --k;
        if (++digit[k] < options[k].size()) {
          done = false;
          break;
        }
        digit[k] = 0;
      }
      if (done) return;
    }
  }

  static std::vector<std::size_t> rest_of(const Target& t, std::size_t n) {
    std::vector<std::size_t> rest;
    for (std::size_t v = 0; v < n; ++v)
      if (!std::binary_search(t.xs.begin(), t.xs.end(), v)) rest.push_back(v);
    return rest;
  }

  static std::vector<std::size_t> members(const std::vector<std::size_t>& rest, std::uint32_t mask) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rest.size(); ++i)
      if ((mask >> i) & 1u) out.push_back(rest[i]);
    return out;
  }

  /// Aggregate over an ordering of changed sets, grouped into levels.
  struct LevelResult {
    bool found = false;
    std::uint32_t level_key_mask = 0;  // first C that produced a witness
    std::vector<Witness> witnesses;
    std::size_t witness_count = 0;
    bool saw_ac2a = false;
    bool saw_admissible = false;
    std::vector<Ac2bFailure> failures;
  };

  /// Walks changed sets in the given order; `same_level(a, b)` says whether
  /// two consecutive sets share a level. With `first_only`, stops at the
  /// first witness; otherwise collects every witness of the first level that
  /// has one.
  template <typename SameLevel>
  LevelResult search(const Target& t, const std::vector<std::uint32_t>& order, SameLevel&& same_level,
                     bool first_only) {
    LevelResult res;
    const auto rest = rest_of(t, actual_.size());
    std::optional<std::uint32_t> found_level;
    for (std::uint32_t cmask : order) {
      if (found_level && !same_level(*found_level, cmask)) break;
      const auto cvars = members(rest, cmask);
      bool stop = false;
      // Changing a variable the outcome mentions falsifies it trivially;
      // such sets still count as witnesses but are left out of the report.
      const bool reportable = std::none_of(cvars.begin(), cvars.end(), [&](std::size_t v) {
        return std::find(outcome_vars_.begin(), outcome_vars_.end(), v) != outcome_vars_.end();
      });
      for_each_change(cvars, [&](const std::vector<int>& wc) {
        auto r = test_cset(t, rest, cmask, wc, first_only ? nullptr : &res.witnesses,
                           opt_.max_witnesses);
        if (reportable) {
          res.saw_ac2a |= r.ac2a;
          res.saw_admissible |= r.admissible;
          if (r.failure && res.failures.size() < opt_.max_failures) res.failures.push_back(std::move(*r.failure));
        }
        if (r.ac2b && r.witnesses > 0) {
          if (!res.found) res.level_key_mask = cmask;
          res.found = true;
          res.witness_count += r.witnesses;
          if (!found_level) found_level = cmask;
          if (first_only) {
            stop = true;
            return false;
          }
        }
        return true;
      });
      if (stop) break;
    }
    return res;
  }

  LevelResult search_by_size(const Target& t, bool first_only) {
    const auto rest = rest_of(t, actual_.size());
    return search(
        t, masks(rest.size()),
        [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) == std::popcount(b); }, first_only);
  }

  /// True iff some witness exists for (C, w_C) with C the given mask.
  bool has_witness(const Target& t, std::uint32_t cmask, const std::vector<int>& wc) {
    const auto rest = rest_of(t, actual_.size());
    auto r = test_cset(t, rest, cmask, wc, nullptr, 0);
    return r.ac2b && r.witnesses > 0;
  }

  const SearchOptions& options() const { return opt_; }

 private:
  const ExtendedModel& ext_;
  Context ctx_;
  SearchOptions opt_;
  BoundFormula phi_;
  std::mt19937_64 rng_;
  bool sampled_ = false;
  bool use_normality_ = false;
  std::optional<std::size_t> actual_index_;
  std::vector<std::size_t> outcome_vars_;
  std::vector<int> actual_;
  std::vector<int> scratch_;
  std::unordered_map<std::vector<int>, bool, PinsHash> cache_;
  std::vector<std::vector<std::uint32_t>> mask_tables_;
};

/// Strict nonempty sub-conjunctions of t, by size then lex; returns the
/// first one satisfying AC2.
inline std::optional<std::uint32_t> minimality_violation(CauseSearch& s, const Target& t) {
  const std::size_t n = t.xs.size();
  if (n < 2) return std::nullopt;
  for (std::uint32_t mask : s.masks(n)) {
    if (mask == 0 || mask == (1u << n) - 1) continue;
    Target sub;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1u) {
        sub.xs.push_back(t.xs[i]);
        sub.xv.push_back(t.xv[i]);
      }
    if (s.search_by_size(sub, true).found) return mask;
  }
  return std::nullopt;
}

/// Fills the verdict fields shared by every entry point.
inline CauseVerdict verdict_from(CauseSearch& s, const Target& t, CauseSearch::LevelResult&& r) {
  CauseVerdict v;
  if (r.found) {
    if (auto sub = minimality_violation(s, t)) {
      v.failed = Condition::ac3;
      Conjunction c;
      for (std::size_t i = 0; i < t.xs.size(); ++i)
        if ((*sub >> i) & 1u) c.push_back({s.sig().endogenous()[t.xs[i]].name, t.xv[i]});
      v.minimal_subcause = std::move(c);
    } else {
      v.is_cause = true;
      v.min_changes = static_cast<std::size_t>(std::popcount(r.level_key_mask));
      v.witnesses = std::move(r.witnesses);
      v.witness_count = r.witness_count;
    }
  } else if (!r.saw_ac2a) {
    v.failed = Condition::ac2a;
  } else if (!r.saw_admissible) {
    v.failed = Condition::normality;
  } else {
    v.failed = Condition::ac2b;
    v.ac2b_failures = std::move(r.failures);
  }
  v.sound = !s.sampled();
  v.stats = s.stats;
  return v;
}

}  // namespace detail

/// AC1: the cause and the outcome both hold in (M, u).
inline bool check_ac1(const CausalModel& model, const Context& ctx, const CandidateCause& cause,
                      const EventFormula& outcome) {
  const World w = solve(model, ctx);
  const auto& sig = model.signature();
  for (const auto& s : cause.settings())
    if (w.values[sig.bind_setting(s)] != s.value) return false;
  return BoundFormula(outcome, sig).eval(w.values);
}

struct Ac2Check {
  bool ac2a = false;
  bool normality = false;
  bool ac2b = false;
  std::optional<std::pair<Conjunction, Conjunction>> failing;  // (W', Z')

  bool ok() const { return ac2a && normality && ac2b; }
};

/// AC2 for one explicit witness, by the literal definition: every W' of W
/// and every Z' of Z minus X.
inline Ac2Check check_ac2_detailed(const ExtendedModel& ext, const Context& ctx,
                                   const CandidateCause& cause, const EventFormula& outcome,
                                   const Witness& witness,
                                   Semantics semantics = Semantics::extended) {
  const auto& model = ext.model();
  const auto& sig = model.signature();
  const std::size_t n = model.endogenous_count();
  const BoundFormula phi(outcome, sig);
  const World actual = solve(model, ctx);

  std::vector<int> xpins(n, kFree), xprime(n, kFree), wpins(n, kFree);
  for (const auto& s : cause.settings()) xpins[sig.bind_setting(s)] = s.value;
  for (const auto& s : witness.x_prime) {
    const auto i = sig.bind_setting(s);
    if (xpins[i] == kFree)
      throw Error(ErrorCategory::invalid_argument, "x' sets '" + s.variable + "', which is not in the cause",
                  s.variable);
    xprime[i] = s.value;
  }
  for (std::size_t i = 0; i < n; ++i)
    if ((xpins[i] == kFree) != (xprime[i] == kFree))
      throw Error(ErrorCategory::invalid_argument, "x' must set every variable of the cause");
  for (const auto& s : witness.w) {
    const auto i = sig.bind_setting(s);
    if (xpins[i] != kFree)
      throw Error(ErrorCategory::invalid_argument, "W must be disjoint from the cause", s.variable);
    wpins[i] = s.value;
  }

  Ac2Check out;
  std::vector<int> pins(n, kFree), world(n);
  for (std::size_t i = 0; i < n; ++i) pins[i] = xprime[i] != kFree ? xprime[i] : wpins[i];
  model.solve_into(ctx.values, pins, world);
  out.ac2a = !phi.eval(world);
  out.normality = semantics == Semantics::preliminary || ext.at_least_as_normal(World{world}, actual);

  std::vector<std::size_t> wv, zv;
  for (std::size_t i = 0; i < n; ++i) {
    if (xpins[i] != kFree) continue;
    (wpins[i] != kFree ? wv : zv).push_back(i);
  }
  if (wv.size() + zv.size() > 24) throw CapExceeded("too many variables for the literal AC2(b) check");
  out.ac2b = true;
  for (std::uint64_t wm = 0; wm < (std::uint64_t{1} << wv.size()) && out.ac2b; ++wm)
    for (std::uint64_t zm = 0; zm < (std::uint64_t{1} << zv.size()); ++zm) {
      for (std::size_t i = 0; i < n; ++i) pins[i] = xpins[i];
      for (std::size_t i = 0; i < wv.size(); ++i)
        if ((wm >> i) & 1u) pins[wv[i]] = wpins[wv[i]];
      for (std::size_t i = 0; i < zv.size(); ++i)
        if ((zm >> i) & 1u) pins[zv[i]] = actual.values[zv[i]];
      model.solve_into(ctx.values, pins, world);
      if (!phi.eval(world)) {
        out.ac2b = false;
        Conjunction wp, zp;
        for (std::size_t i = 0; i < wv.size(); ++i)
          if ((wm >> i) & 1u) wp.push_back({sig.endogenous()[wv[i]].name, wpins[wv[i]]});
        for (std::size_t i = 0; i < zv.size(); ++i)
          if ((zm >> i) & 1u) zp.push_back({sig.endogenous()[zv[i]].name, actual.values[zv[i]]});
        out.failing = std::pair{std::move(wp), std::move(zp)};
        break;
      }
    }
  return out;
}

inline bool check_ac2(const ExtendedModel& ext, const Context& ctx, const CandidateCause& cause,
                      const EventFormula& outcome, const Witness& witness,
                      Semantics semantics = Semantics::extended) {
  return check_ac2_detailed(ext, ctx, cause, outcome, witness, semantics).ok();
}

/// Decides AC1-AC3. Witnesses are every AC2 witness with the minimal number
/// of changes.
inline CauseVerdict is_actual_cause(const ExtendedModel& ext, const Context& ctx,
                                    const CandidateCause& cause, const EventFormula& outcome,
                                    const SearchOptions& opt = {}) {
  detail::CauseSearch s(ext, ctx, outcome, opt);
  const auto t = s.bind(cause);
  if (!s.ac1(t)) {
    CauseVerdict v;
    v.failed = Condition::ac1;
    v.stats = s.stats;
    v.sound = !s.sampled();
    return v;
  }
  return detail::verdict_from(s, t, s.search_by_size(t, false));
}

/// Every conjunction of up to `max_conjuncts` actual primitive events that
/// is a cause of `outcome`, by size then declaration order. Variables the
/// outcome mentions are not candidates.
inline std::vector<std::pair<CandidateCause, CauseVerdict>> find_all_causes(
    const ExtendedModel& ext, const Context& ctx, const EventFormula& outcome,
    std::size_t max_conjuncts, const SearchOptions& opt = {}) {
  if (max_conjuncts < 1) throw Error(ErrorCategory::invalid_argument, "max_conjuncts must be at least 1");
  const auto& sig = ext.model().signature();
  const World actual = solve(ext.model(), ctx);
  const auto mentioned = outcome.variables();
  std::vector<std::size_t> pool;
  for (std::size_t v = 0; v < sig.endogenous().size(); ++v)
    if (!mentioned.count(sig.endogenous()[v].name)) pool.push_back(v);
  std::vector<std::pair<CandidateCause, CauseVerdict>> out;
  if (pool.empty() || !BoundFormula(outcome, sig).eval(actual.values)) return out;
  if (pool.size() > 20) throw CapExceeded("too many candidate variables");
  for (std::uint32_t mask : detail::ordered_masks(pool.size())) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size == 0) continue;
    if (size > max_conjuncts) break;
    Conjunction c;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if ((mask >> i) & 1u) c.push_back({sig.endogenous()[pool[i]].name, actual.values[pool[i]]});
    CandidateCause cause(std::move(c));
    auto v = is_actual_cause(ext, ctx, cause, outcome, opt);
    if (v.is_cause) out.emplace_back(std::move(cause), std::move(v));
  }
  return out;
}

}  // namespace causelab

#endif  // CAUSELAB_CAUSE_HPP
