// Command-line front end: loads models, answers queries, prints one JSON
// object per query.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "causelab/causelab.hpp"

#ifndef CAUSELAB_CORPUS_DIR
#define CAUSELAB_CORPUS_DIR "corpus"
#endif

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace causelab;

namespace {

enum Exit { kAnswered = 0, kDiagnostics = 1, kCap = 2 };

struct Settings {
  std::vector<std::string> models;
  std::string query;
  std::string query_file;
  bool preliminary = false;
  bool extended = false;
  std::string strategy = "reciprocal";
  std::vector<std::string> weights;
  std::size_t max_vars = 12;
  std::size_t sampled = 0;
  std::uint64_t seed = 1;
  std::size_t max_witnesses = 10;
  bool pretty = false;
  std::string dir = CAUSELAB_CORPUS_DIR;
};

json settings_json(const Conjunction& c) {
  json j = json::object();
  for (const auto& s : c) j[s.variable] = s.value;
  return j;
}

json world_json(const Signature& sig, const World& w) {
  json j = json::object();
  for (std::size_t i = 0; i < w.values.size(); ++i) j[sig.endogenous()[i].name] = w.values[i];
  return j;
}

json witness_json(const Signature& sig, const Witness& w) {
  return json{{"W", w.w_set()},
              {"x_prime", settings_json(w.x_prime)},
              {"w", settings_json(w.w)},
              {"changes", w.changes},
              {"world", world_json(sig, w.world)}};
}

json verdict_json(const Signature& sig, const CauseVerdict& v) {
  json j{{"is_cause", v.is_cause}, {"sound", v.sound}};
  j["failed_condition"] = v.is_cause ? json(nullptr) : json(std::string(condition_name(v.failed)));
  if (v.is_cause) j["min_changes"] = v.min_changes;
  j["witness_count"] = v.witness_count;
  json ws = json::array();
  for (const auto& w : v.witnesses) ws.push_back(witness_json(sig, w));
  j["witnesses"] = ws;
  if (!v.ac2b_failures.empty()) {
    json fs = json::array();
    for (const auto& f : v.ac2b_failures)
      fs.push_back(json{{"witness", witness_json(sig, f.witness)},
                        {"W_prime", settings_json(f.w_prime)},
                        {"Z_prime", settings_json(f.z_prime)}});
    j["ac2b_failures"] = fs;
  }
  if (v.minimal_subcause) j["minimal_subcause"] = settings_json(*v.minimal_subcause);
  return j;
}

json stats_json(const SearchStats& s) {
  return json{{"interventions_solved", s.solves},
              {"cache_hits", s.cache_hits},
              {"changed_sets", s.changed_sets},
              {"ac2a_checks", s.ac2a_checks},
              {"subsets_checked", s.ac2b_checks}};
}

void add_stats(SearchStats& into, const SearchStats& s) {
  into.solves += s.solves;
  into.cache_hits += s.cache_hits;
  into.changed_sets += s.changed_sets;
  into.ac2a_checks += s.ac2a_checks;
  into.ac2b_checks += s.ac2b_checks;
}

json diagnostics_json(const std::vector<Diagnostic>& ds) {
  json arr = json::array();
  for (const auto& d : ds)
    arr.push_back(json{{"category", std::string(category_name(d.category))},
                       {"message", d.message},
                       {"origin", d.loc.origin},
                       {"line", d.loc.line},
                       {"column", d.loc.column}});
  return arr;
}

json result_json(const QueryResult& r, const RunOptions& opt, double ms) {
  json j;
  j["query"] = print(r.query);
  j["kind"] = std::string(kind_name(r.query.kind));
  json models = json::array();
  for (std::size_t i = 0; i < r.models.size(); ++i) models.push_back(json{{"name", r.models[i]}, {"hash", r.hashes[i]}});
  j["models"] = models;
  j["options"] = json{{"semantics", r.semantics == Semantics::preliminary ? "preliminary" : "extended"},
                      {"strategy", print_strategy(r.strategy)},
                      {"max_vars", opt.search.max_vars},
                      {"exact", opt.search.exact},
                      {"samples", opt.search.exact ? 0 : opt.search.samples},
                      {"seed", opt.search.seed}};
  const Signature& sig = *r.signature;
  json res;
  SearchStats stats;
  switch (r.query.kind) {
    case Query::Kind::solve: res["world"] = world_json(sig, *r.world); break;
    case Query::Kind::eval: res["holds"] = *r.truth; break;
    case Query::Kind::cause:
      res = verdict_json(sig, *r.verdict);
      stats = r.verdict->stats;
      break;
    case Query::Kind::responsibility: {
      const auto& rs = *r.responsibility;
      res["value"] = to_string(rs.value);
      res["k"] = rs.k ? json(*rs.k) : json(nullptr);
      res["witness"] = rs.achieving_witness ? witness_json(sig, *rs.achieving_witness) : json(nullptr);
      res["verdict"] = verdict_json(sig, rs.verdict);
      stats = rs.verdict.stats;
      break;
    }
    case Query::Kind::blame: {
      res["value"] = to_string(r.blame->value);
      json per = json::array();
      for (const auto& p : r.blame->per_situation) {
        per.push_back(json{{"responsibility", to_string(p.value)}, {"k", p.k ? json(*p.k) : json(nullptr)}});
        add_stats(stats, p.verdict.stats);
      }
      res["situations"] = per;
      break;
    }
    case Query::Kind::ness:
      res["is_ness_cause"] = r.ness.has_value();
      res["set"] = r.ness ? settings_json(r.ness->events()) : json(nullptr);
      break;
    case Query::Kind::causes: {
      json arr = json::array();
      for (const auto& [c, v] : r.causes) {
        arr.push_back(json{{"cause", settings_json(c.settings())}, {"min_changes", v.min_changes}});
        add_stats(stats, v.stats);
      }
      res["causes"] = arr;
      break;
    }
  }
  j["result"] = res;
  j["summary"] = r.summary;
  j["stats"] = stats_json(stats);
  j["timing"] = json{{"wall_ms", ms}};
  return j;
}

std::string pretty(const QueryResult& r) {
  std::ostringstream os;
  os << print(r.query) << "\n  => " << r.summary << "\n";
  auto show = [&](const Witness& w) {
    os << "     W={";
    const auto names = w.w_set();
    for (std::size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << names[i];
    os << "}  w={" << print_conjunction(w.w, ",") << "}  x'={" << print_conjunction(w.x_prime, ",")
       << "}  changes=" << w.changes << "\n";
  };
  const CauseVerdict* v = r.verdict ? &*r.verdict : r.responsibility ? &r.responsibility->verdict : nullptr;
  if (v) {
    if (v->is_cause) {
      os << "  witnesses (" << v->witness_count << " with " << v->min_changes << " changes):\n";
      for (const auto& w : v->witnesses) show(w);
    } else {
      os << "  fails " << condition_name(v->failed) << "\n";
      for (const auto& f : v->ac2b_failures)
        os << "     W'={" << print_conjunction(f.w_prime, ",") << "}  Z'={" << print_conjunction(f.z_prime, ",")
           << "}\n";
    }
  }
  if (r.blame)
    for (std::size_t i = 0; i < r.blame->per_situation.size(); ++i)
      os << "  situation " << i << ": " << to_string(r.blame->per_situation[i].value) << "\n";
  return os.str();
}

void report(const std::vector<Diagnostic>& ds) {
  std::cout << json{{"diagnostics", diagnostics_json(ds)}}.dump() << "\n";
  for (const auto& d : ds) std::cerr << d.to_string() << "\n";
}

RunOptions run_options(const Settings& s) {
  RunOptions o;
  o.search.semantics = s.preliminary ? Semantics::preliminary : Semantics::extended;
  o.search.max_vars = s.max_vars;
  o.search.exact = s.sampled == 0;
  if (s.sampled) o.search.samples = s.sampled;
  o.search.seed = s.seed;
  o.search.max_witnesses = s.max_witnesses;
  if (s.strategy == "exponential") o.strategy = ScoringStrategy::exponential();
  else if (s.strategy == "ways") o.strategy = ScoringStrategy::ways_fraction();
  else if (s.strategy == "weighted") {
    std::map<std::string, Rational> w;
    for (const auto& item : s.weights) {
      const auto eq = item.find('=');
      auto value = eq == std::string::npos ? std::nullopt : parse_rational(item.substr(eq + 1));
      if (!value)
        throw ParseError({Diagnostic{ErrorCategory::syntax, "bad --weight '" + item + "' (expected NAME=p/q)",
                                     Location{"<command line>", 1, 1, 1}}});
      w[item.substr(0, eq)] = *value;
    }
    o.strategy = ScoringStrategy::weighted(std::move(w));
  }
  return o;
}

/// Loads a query file, following `load` directives relative to it.
std::vector<Query> load_statements(Workspace& ws, const fs::path& file, const std::string& text) {
  std::vector<Query> out;
  for (auto& st : parse_statements(text, file.string())) {
    if (auto* load = std::get_if<LoadDirective>(&st)) {
      ws.load_file(file.parent_path() / load->path);
    } else {
      out.push_back(std::move(std::get<Query>(st)));
    }
  }
  return out;
}

int answer(const Settings& s, const std::string& command) {
  int code = kAnswered;
  Workspace ws;
  std::vector<Query> queries;
  RunOptions opt;
  try {
    opt = run_options(s);
    for (const auto& m : s.models) ws.load_file(m);
    if (!s.query_file.empty()) {
      const auto queries_from_file = load_statements(ws, s.query_file, Workspace::read_file(s.query_file));
      queries.insert(queries.end(), queries_from_file.begin(), queries_from_file.end());
    }
    if (!s.query.empty()) {
      std::string text = s.query;
      // `cause -q 'L=1 of F=1 in ...'` may omit the leading keyword.
      if (command != "run") {
        const auto first = text.find_first_not_of(" \t");
        const auto word = text.substr(first == std::string::npos ? 0 : first, text.find_first_of(" \t[", first) - first);
        const bool aliased = command == "resp" && word == "responsibility";
        if (word != command && !aliased) text = command + " " + text;
      }
      queries.push_back(parse_query(text, "<query>"));
    }
    if (queries.empty())
      throw ParseError({Diagnostic{ErrorCategory::syntax, "no query given (use -q or -Q)",
                                   Location{"<command line>", 1, 1, 1}}});
  } catch (const ParseError& e) {
    report(e.diagnostics());
    return kDiagnostics;
  }

  for (const auto& q : queries) {
    if (command != "run" && kind_name(q.kind) != command) {
      report({Diagnostic{ErrorCategory::syntax,
                         "'" + command + "' cannot answer a '" + std::string(kind_name(q.kind)) + "' query", q.loc}});
      code = std::max(code, static_cast<int>(kDiagnostics));
      continue;
    }
    try {
      const auto t0 = std::chrono::steady_clock::now();
      const QueryResult r = run_query(ws, q, opt);
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      if (s.pretty) std::cout << pretty(r);
      else std::cout << result_json(r, opt, ms).dump() << "\n";
    } catch (const CapExceeded& e) {
      std::cout << json{{"query", print(q)}, {"error", "resource cap"}, {"message", e.what()}}.dump() << "\n";
      std::cerr << "resource cap: " << e.what() << "\n";
      code = kCap;
    } catch (const ParseError& e) {
      report(e.diagnostics());
      code = std::max(code, static_cast<int>(kDiagnostics));
    } catch (const Error& e) {
      report({Diagnostic{e.category(), e.what(), q.loc}});
      code = std::max(code, static_cast<int>(kDiagnostics));
    }
  }
  return code;
}

int corpus_run(const Settings& s) {
  const fs::path dir = s.dir;
  std::ifstream in(dir / "expected");
  if (!in) {
    report({Diagnostic{ErrorCategory::unknown_name, "no 'expected' file in " + dir.string(),
                       Location{(dir / "expected").string(), 1, 1, 1}}});
    return kDiagnostics;
  }
  struct Expectation {
    std::string file;
    std::size_t index;
    std::string summary;
    int line;
  };
  std::vector<Expectation> expected;
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    Expectation e;
    e.line = n;
    ls >> e.file >> e.index;
    std::getline(ls >> std::ws, e.summary);
    expected.push_back(std::move(e));
  }

  const RunOptions opt = run_options(s);
  std::map<std::string, std::pair<Workspace, std::vector<Query>>> loaded;
  int failures = 0;
  for (const auto& e : expected) {
    json row{{"file", e.file}, {"index", e.index}, {"expected", e.summary}};
    std::string actual;
    double ms = 0;
    try {
      auto it = loaded.find(e.file);
      if (it == loaded.end()) {
        Workspace ws;
        const fs::path path = dir / e.file;
        auto qs = load_statements(ws, path, Workspace::read_file(path));
        it = loaded.emplace(e.file, std::pair{std::move(ws), std::move(qs)}).first;
      }
      const auto& [ws, qs] = it->second;
      if (e.index >= qs.size()) throw std::out_of_range("no query " + std::to_string(e.index));
      row["query"] = print(qs[e.index]);
      const auto t0 = std::chrono::steady_clock::now();
      actual = run_query(ws, qs[e.index], opt).summary;
      ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    } catch (const ParseError& err) {
      actual = "error: " + err.diagnostics().front().to_string();
    } catch (const std::exception& err) {
      actual = std::string("error: ") + err.what();
    }
    const bool pass = actual == e.summary;
    if (!pass) ++failures;
    row["actual"] = actual;
    row["pass"] = pass;
    row["timing"] = json{{"wall_ms", ms}};
    if (s.pretty)
      std::cout << (pass ? "PASS " : "FAIL ") << e.file << "#" << e.index << "  " << actual
                << (pass ? "" : "  (expected " + e.summary + ")") << "\n";
    else
      std::cout << row.dump() << "\n";
  }
  std::cerr << expected.size() - static_cast<std::size_t>(failures) << "/" << expected.size()
            << " corpus expectations hold\n";
  return failures ? kDiagnostics : kAnswered;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Actual causation, responsibility and blame in finite structural causal models"};
  app.require_subcommand(1);
  Settings s;

  auto common = [&](CLI::App* sub, bool with_queries) {
    sub->add_option("-m,--model", s.models, "model or state file (.cm, .ce); repeatable");
    if (with_queries) {
      sub->add_option("-q,--query", s.query, "query text");
      sub->add_option("-Q,--query-file", s.query_file, "file of ';'-separated queries (.cq)");
    }
    auto* pre = sub->add_flag("--preliminary", s.preliminary, "ignore normality orders");
    sub->add_flag("--extended", s.extended, "use normality orders (default)")->excludes(pre);
    sub->add_option("--strategy", s.strategy, "responsibility scoring")
        ->check(CLI::IsMember({"reciprocal", "exponential", "weighted", "ways"}));
    sub->add_option("--weight", s.weights, "NAME=p/q weight for the weighted strategy; repeatable");
    sub->add_option("--max-vars", s.max_vars, "endogenous-variable cap for exact search")
        ->envname("CAUSELAB_MAX_VARS");
    sub->add_option("--sampled", s.sampled, "above the cap, sample N AC2(b) subsets (unsound)");
    sub->add_option("--seed", s.seed, "seed for --sampled");
    sub->add_option("--max-witnesses", s.max_witnesses, "witnesses printed per verdict");
    sub->add_flag("--pretty", s.pretty, "human-readable output");
  };

  std::string command;
  for (const char* name : {"solve", "eval", "cause", "resp", "blame", "ness", "causes", "run"}) {
    auto* sub = app.add_subcommand(name, std::string("answer ") + (std::string(name) == "run" ? "any" : name) +
                                             " queries");
    common(sub, true);
    sub->callback([&command, name] { command = name; });
  }
  auto* corpus = app.add_subcommand("corpus", "bundled example corpus");
  corpus->require_subcommand(1);
  auto* corpus_run_cmd = corpus->add_subcommand("run", "check every bundled expectation");
  common(corpus_run_cmd, false);
  corpus_run_cmd->add_option("--dir", s.dir, "corpus directory");
  corpus_run_cmd->callback([&command] { command = "corpus run"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kDiagnostics;
  }
  if (s.max_witnesses == 0) s.max_witnesses = 1;
  if (command == "corpus run") return corpus_run(s);
  return answer(s, command);
}
