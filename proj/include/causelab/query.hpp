#ifndef CAUSELAB_QUERY_HPP
#define CAUSELAB_QUERY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "causelab/attribution.hpp"
#include "causelab/cause.hpp"
#include "causelab/dsl.hpp"
#include "causelab/ness.hpp"

namespace causelab {

/// Defaults for queries that do not say otherwise.
struct RunOptions {
  SearchOptions search;
  ScoringStrategy strategy;
};

struct QueryResult {
  Query query;
  std::vector<std::string> models;  // names of every model consulted
  std::vector<std::string> hashes;
  Semantics semantics = Semantics::extended;
  ScoringStrategy strategy;

  std::optional<World> world;
  std::optional<bool> truth;
  std::optional<CauseVerdict> verdict;
  std::optional<Responsibility> responsibility;
  std::optional<Blame> blame;
  std::optional<SufficientSet> ness;
  std::vector<std::pair<CandidateCause, CauseVerdict>> causes;
  const Signature* signature = nullptr;

  /// One-line canonical answer, compared by `corpus run`.
  std::string summary;
};

inline std::string print_world(const Signature& sig, const World& w) {
  std::string s;
  for (std::size_t i = 0; i < w.values.size(); ++i)
    s += (i ? " " : "") + sig.endogenous()[i].name + "=" + std::to_string(w.values[i]);
  return s;
}

/// Answers one query. Engine errors come back as ParseError diagnostics
/// located at the offending name; CapExceeded propagates unchanged.
inline QueryResult run_query(const Workspace& ws, const Query& q, const RunOptions& opt = {}) {
  QueryResult r;
  r.query = q;
  r.semantics = q.semantics.value_or(opt.search.semantics);
  r.strategy = q.strategy.value_or(opt.strategy);
  SearchOptions so = opt.search;
  so.semantics = r.semantics;

  auto rethrow = [&](const Error& e) -> ParseError {
    Location l = q.loc;
    if (auto m = q.mention(e.subject())) l = *m;
    return ParseError({Diagnostic{e.category(), e.what(), l}});
  };

  try {
    if (q.kind == Query::Kind::blame) {
      const EpistemicState state = ws.state(q.state, q.mention(q.state).value_or(q.loc));
      for (const auto& s : state.situations()) {
        const auto& name = s.model.model().name();
        if (std::find(r.models.begin(), r.models.end(), name) == r.models.end()) {
          r.models.push_back(name);
          r.hashes.push_back(model_hash(ws.decl(name)));
        }
      }
      r.signature = &state.situations().front().model.model().signature();
      r.blame = degree_of_blame(state, Intervention(q.subject), *q.outcome, r.strategy, so);
      r.summary = to_string(r.blame->value);
      return r;
    }

    const std::string& name = ws.resolve_model(q.where.model, q.where.model ? q.where.model_loc : q.loc);
    const ExtendedModel& ext = ws.model(name);
    r.models.push_back(name);
    r.hashes.push_back(model_hash(ws.decl(name)));
    r.signature = &ext.model().signature();
    Context ctx;
    try {
      ctx = make_context(ext.model().signature(), q.where.assigns);
    } catch (const Error& e) {
      Location l = q.loc;
      for (std::size_t i = 0; i < q.where.assigns.size(); ++i)
        if (q.where.assigns[i].variable == e.subject()) l = q.where.assign_locs[i];
      throw ParseError({Diagnostic{e.category(), e.what(), l}});
    }

    switch (q.kind) {
      case Query::Kind::solve:
        r.world = solve(ext.model(), ctx, q.prefix);
        r.summary = print_world(ext.model().signature(), *r.world);
        break;
      case Query::Kind::eval:
        r.truth = holds(ext.model(), ctx, *q.formula);
        r.summary = *r.truth ? "true" : "false";
        break;
      case Query::Kind::cause:
        r.verdict = is_actual_cause(ext, ctx, CandidateCause(q.subject), *q.outcome, so);
        r.summary = r.verdict->is_cause ? "true" : "false " + std::string(condition_name(r.verdict->failed));
        break;
      case Query::Kind::responsibility:
        r.responsibility = degree_of_responsibility(ext, ctx, CandidateCause(q.subject), *q.outcome, r.strategy, so);
        r.summary = to_string(r.responsibility->value);
        break;
      case Query::Kind::ness: {
        (void)BoundFormula(*q.outcome, ext.model().signature());
        r.ness = is_ness_cause(ext.model(), ctx, q.subject.front(), *q.outcome);
        r.summary = r.ness ? "{" + print_conjunction(r.ness->events(), ", ") + "}" : "none";
        break;
      }
      case Query::Kind::causes:
        r.causes = find_all_causes(ext, ctx, *q.outcome, q.max_conjuncts, so);
        for (const auto& [c, v] : r.causes)
          r.summary += (r.summary.empty() ? "{" : " {") + print_conjunction(c.settings(), ", ") + "}";
        if (r.summary.empty()) r.summary = "none";
        break;
      case Query::Kind::blame: break;
    }
  } catch (const CapExceeded&) {
    throw;
  } catch (const Error& e) {
    throw rethrow(e);
  }
  return r;
}

}  // namespace causelab

#endif  // CAUSELAB_QUERY_HPP
