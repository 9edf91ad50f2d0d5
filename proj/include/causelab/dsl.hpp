#ifndef CAUSELAB_DSL_HPP
#define CAUSELAB_DSL_HPP

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "causelab/attribution.hpp"
#include "causelab/cause.hpp"
#include "causelab/formula.hpp"
#include "causelab/model.hpp"
#include "causelab/normality.hpp"
#include "causelab/rational.hpp"

namespace causelab {

/// 1-based line and column of a token's first character; `length` columns.
struct Location {
  std::string origin;
  int line = 1;
  int column = 1;
  int length = 1;

  bool operator==(const Location&) const = default;
};

struct Diagnostic {
  ErrorCategory category = ErrorCategory::syntax;
  std::string message;
  Location loc;

  std::string to_string() const {
    return loc.origin + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " +
           std::string(category_name(category)) + ": " + message;
  }
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(std::vector<Diagnostic> diags)
      : std::runtime_error(diags.empty() ? "parse error" : diags.front().to_string()),
        diagnostics_(std::move(diags)) {}

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// ---------------------------------------------------------------------------
// Documents

struct ModelDecl {
  CausalModel model;
  std::optional<NormalityOrder> normality;
  Location loc;

  ExtendedModel extended() const {
    return normality ? ExtendedModel(model, *normality) : ExtendedModel(model);
  }
};

struct SituationDecl {
  std::string model;
  std::vector<Setting> context;
  Rational probability{0};
  Location loc;
  Location model_loc;
  std::vector<Location> context_locs;
};

struct StateDecl {
  std::string name;
  std::vector<SituationDecl> situations;
  Location loc;
};

struct Document {
  std::vector<ModelDecl> models;
  std::vector<StateDecl> states;
};

// ---------------------------------------------------------------------------
// Queries

struct ContextSpec {
  std::optional<std::string> model;
  std::vector<Setting> assigns;
  std::vector<Location> assign_locs;
  Location model_loc;
};

struct Query {
  enum class Kind { solve, eval, cause, responsibility, blame, ness, causes };

  Kind kind = Kind::solve;
  Intervention prefix;                  // solve
  std::optional<CausalFormula> formula;  // eval
  Conjunction subject;                  // cause, resp, ness (one event), blame action
  std::optional<EventFormula> outcome;  // all but solve/eval
  ContextSpec where;                    // all but blame
  std::string state;                    // blame
  std::optional<Semantics> semantics;
  std::optional<ScoringStrategy> strategy;
  std::size_t max_conjuncts = 1;  // causes
  Location loc;
  /// First mention of each name, for mapping engine errors to the text.
  std::vector<std::pair<std::string, Location>> mentions;

  std::optional<Location> mention(const std::string& name) const {
    for (const auto& [n, l] : mentions)
      if (n == name) return l;
    return std::nullopt;
  }
};

inline std::string_view kind_name(Query::Kind k) {
  switch (k) {
    case Query::Kind::solve: return "solve";
    case Query::Kind::eval: return "eval";
    case Query::Kind::cause: return "cause";
    case Query::Kind::responsibility: return "resp";
    case Query::Kind::blame: return "blame";
    case Query::Kind::ness: return "ness";
    case Query::Kind::causes: return "causes";
  }
  return "solve";
}

/// `load "file";` inside a query file; the path is relative to that file.
struct LoadDirective {
  std::string path;
  Location loc;
};

using Statement = std::variant<Query, LoadDirective>;

namespace detail {

// ---------------------------------------------------------------------------
// Lexer

struct Token {
  enum class Kind { ident, integer, string, symbol, end };
  Kind kind = Kind::end;
  std::string text;
  std::int64_t value = 0;
  Location loc;
};

inline std::vector<Token> lex(std::string_view src, const std::string& origin) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto fail = [&](const std::string& msg, int len = 1) {
    throw ParseError({Diagnostic{ErrorCategory::syntax, msg, Location{origin, line, col, len}}});
  };
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  static const char* const kSymbols2[] = {"<-", "<=", ">=", "==", "!=", "&&", "||", ".."};
  while (i < src.size()) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.loc = Location{origin, line, col, 1};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Token::Kind::ident;
      t.text = std::string(src.substr(i, j - i));
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Token::Kind::integer;
      t.text = std::string(src.substr(i, j - i));
      if (j < src.size() && src[j] == '.' && (j + 1 >= src.size() || src[j + 1] != '.')) {
        advance(j - i);
        fail("decimal numbers are not accepted; write a rational p/q");
      }
      if (t.text.size() > 9) fail("integer literal too large", static_cast<int>(t.text.size()));
      t.value = std::stoll(t.text);
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') fail("unterminated string");
      t.kind = Token::Kind::string;
      t.text = std::string(src.substr(i + 1, j - i - 1));
      t.loc.length = static_cast<int>(j - i + 1);
      out.push_back(t);
      advance(j - i + 1);
      continue;
    } else {
      t.kind = Token::Kind::symbol;
      for (const char* s : kSymbols2)
        if (src.substr(i, 2) == s) t.text = s;
      if (t.text.empty()) {
        if (std::string_view("{}()[],;:=<>+-*!&|/").find(c) == std::string_view::npos) {
          if (c == '.') fail("decimal numbers are not accepted; write a rational p/q");
          fail(std::string("unexpected character '") + c + "'");
        }
        t.text = std::string(1, c);
      }
    }
    t.loc.length = static_cast<int>(t.text.size());
    advance(t.text.size());
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::Kind::end;
  end.text = "end of input";
  end.loc = Location{origin, line, col, 1};
  out.push_back(end);
  return out;
}

inline bool is_reserved(std::string_view w) {
  static const std::set<std::string_view> kReserved = {
      "model", "exogenous", "endogenous", "normality", "rank", "state", "situation",
      "prob",  "ctx",       "if",         "then",      "else", "min",   "max"};
  return kReserved.count(w) > 0;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::string_view src, std::string origin) : origin_(std::move(origin)), toks_(lex(src, origin_)) {}

  Document document() {
    Document doc;
    while (!at_end()) {
      if (peek_keyword("model")) {
        auto m = model_decl();
        if (m) doc.models.push_back(std::move(*m));
      } else if (peek_keyword("state")) {
        doc.states.push_back(state_decl());
      } else {
        fail(peek(), "expected 'model' or 'state'");
      }
    }
    if (!diags_.empty()) throw ParseError(diags_);
    return doc;
  }

  std::vector<Statement> statements() {
    std::vector<Statement> out;
    while (!at_end()) {
      if (accept(";")) continue;
      if (peek_keyword("load")) {
        const Token kw = next();
        const Token path = peek();
        if (path.kind != Token::Kind::string) fail(path, "expected a quoted file name after 'load'");
        next();
        out.push_back(LoadDirective{path.text, kw.loc});
      } else {
        out.push_back(query());
      }
      if (!at_end()) expect(";", "';' between statements");
    }
    return out;
  }

  Query single_query() {
    Query q = query();
    accept(";");
    if (!at_end()) fail(peek(), "unexpected '" + peek().text + "' after the query");
    return q;
  }

  CausalFormula causal_formula_only() {
    auto f = causal_formula();
    if (!at_end()) fail(peek(), "unexpected '" + peek().text + "' after the formula");
    return f;
  }

  Expr expr_only() {
    auto e = expr();
    if (!at_end()) fail(peek(), "unexpected '" + peek().text + "' after the expression");
    return e;
  }

 private:
  // -- token helpers --------------------------------------------------------
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& previous() const { return toks_[pos_ ? pos_ - 1 : 0]; }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Token::Kind::end; }
  bool peek_symbol(std::string_view s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Token::Kind::symbol && peek(ahead).text == s;
  }
  bool peek_keyword(std::string_view s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Token::Kind::ident && peek(ahead).text == s;
  }
  bool accept(std::string_view s) {
    if (!peek_symbol(s)) return false;
    next();
    return true;
  }
  bool accept_keyword(std::string_view s) {
    if (!peek_keyword(s)) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(const Token& at, const std::string& msg,
                         ErrorCategory cat = ErrorCategory::syntax) {
    diags_.push_back(Diagnostic{cat, msg, at.loc});
    throw ParseError(diags_);
  }
  std::string describe(const Token& t) const {
    if (t.kind == Token::Kind::end) return "end of input";
    return "'" + t.text + "'";
  }
  Token expect(std::string_view s, const std::string& what) {
    if (!peek_symbol(s)) fail(peek(), "expected " + what + ", found " + describe(peek()));
    return next();
  }
  void expect_keyword(std::string_view s) {
    if (!peek_keyword(s)) fail(peek(), "expected '" + std::string(s) + "', found " + describe(peek()));
    next();
  }
  /// Closing bracket for `open`; a missing one is reported at the opener.
  void close(const Token& open, std::string_view s) {
    if (peek_symbol(s)) {
      next();
      return;
    }
    fail(open, "unmatched '" + open.text + "' (expected '" + std::string(s) + "' before " +
                   describe(peek()) + ")");
  }
  Token ident(const std::string& what) {
    if (peek().kind != Token::Kind::ident) fail(peek(), "expected " + what + ", found " + describe(peek()));
    return next();
  }
  Token name(const std::string& what) {
    Token t = ident(what);
    if (is_reserved(t.text)) fail(t, "'" + t.text + "' is reserved and cannot name " + what);
    return t;
  }
  std::int64_t integer(const std::string& what) {
    const bool neg = accept("-");
    if (peek().kind != Token::Kind::integer) fail(peek(), "expected " + what + ", found " + describe(peek()));
    const auto v = next().value;
    return neg ? -v : v;
  }
  int small_int(const std::string& what) { return static_cast<int>(integer(what)); }

  Rational rational() {
    const auto p = integer("a rational p/q");
    std::int64_t q = 1;
    if (accept("/")) {
      const Token qt = peek();
      q = integer("a denominator");
      if (q == 0) fail(qt, "zero denominator");
    }
    return Rational(p, q);
  }

  void mention(const Token& t) {
    for (const auto& [n, _] : mentions_)
      if (n == t.text) return;
    mentions_.emplace_back(t.text, t.loc);
  }

  // -- models ----------------------------------------------------------------
  struct VarInfo {
    Location loc;
    bool endogenous = false;
  };

  std::optional<ModelDecl> model_decl() {
    const Token kw = next();
    const Token nm = name("a model");
    const Token open = expect("{", "'{' after the model name");
    std::vector<Variable> exo, endo;
    std::vector<Equation> eqs;
    std::map<std::string, VarInfo> vars;
    std::vector<std::pair<std::string, Location>> refs;  // (name, loc) of every reference
    std::map<std::string, std::vector<std::pair<std::string, Location>>> refs_by_target;
    std::optional<NormalityOrder> norm;
    std::vector<std::pair<std::string, Location>> norm_refs;
    Location norm_loc;
    while (!peek_symbol("}")) {
      if (at_end()) close(open, "}");
      if (peek_keyword("exogenous") || peek_keyword("endogenous")) {
        const bool is_endo = next().text == "endogenous";
        const Token v = name("a variable");
        if (vars.count(v.text))
          fail(v, "variable '" + v.text + "' is already declared", ErrorCategory::duplicate_name);
        vars[v.text] = VarInfo{v.loc, is_endo};
        expect(":", "':' before the range");
        auto range = range_decl(v);
        if (is_endo) {
          expect("=", "'=' before the equation");
          mentions_.clear();
          Expr body = expr();
          refs_by_target[v.text] = mentions_;
          endo.push_back(Variable{v.text, std::move(range)});
          eqs.push_back(Equation{v.text, std::move(body)});
        } else {
          exo.push_back(Variable{v.text, std::move(range)});
        }
        expect(";", "';' after the declaration");
      } else if (peek_keyword("normality")) {
        const Token nk = next();
        if (norm) fail(nk, "a model has at most one normality block", ErrorCategory::duplicate_name);
        norm_loc = nk.loc;
        mentions_.clear();
        norm = normality_block();
        norm_refs = mentions_;
      } else {
        fail(peek(), "expected 'exogenous', 'endogenous', 'normality' or '}', found " + describe(peek()));
      }
    }
    next();

    // Semantic checks with locations, before the model validates itself.
    const std::size_t before = diags_.size();
    for (const auto& [target, rs] : refs_by_target)
      for (const auto& [ref, loc] : rs) {
        if (!vars.count(ref)) {
          diags_.push_back({ErrorCategory::unknown_variable,
                            "equation for '" + target + "' references unknown variable '" + ref + "'", loc});
        } else if (ref == target) {
          diags_.push_back({ErrorCategory::cycle, "cycle: " + target + " -> " + target, loc});
        }
      }
    for (const auto& [ref, loc] : norm_refs) {
      auto it = vars.find(ref);
      if (it == vars.end())
        diags_.push_back({ErrorCategory::unknown_variable, "unknown variable '" + ref + "' in a world pattern", loc});
      else if (!it->second.endogenous)
        diags_.push_back({ErrorCategory::unknown_variable,
                          "world patterns range over endogenous variables; '" + ref + "' is exogenous", loc});
    }
    if (diags_.size() != before) return std::nullopt;

    auto locate = [&](const std::string& subject, const Location& fallback) {
      for (const auto& [target, rs] : refs_by_target)
        for (const auto& [ref, loc] : rs)
          if (ref == subject) return loc;
      auto it = vars.find(subject);
      return it != vars.end() ? it->second.loc : fallback;
    };
    try {
      ModelDecl m{CausalModel(nm.text, Signature(std::move(exo), std::move(endo)), std::move(eqs)), std::nullopt,
                  kw.loc};
      if (norm) {
        try {
          (void)causelab::close(*norm, m.model.signature());
        } catch (const Error& e) {
          Location l = norm_loc;
          for (const auto& [ref, loc] : norm_refs)
            if (ref == e.subject()) {
              l = loc;
              break;
            }
          diags_.push_back({e.category(), e.what(), l});
          return std::nullopt;
        }
        m.normality = std::move(norm);
      }
      return m;
    } catch (const Error& e) {
      Location l = nm.loc;
      if (!e.subject().empty()) {
        // Cycles and totality failures point at the declaration.
        auto it = vars.find(e.subject());
        if (e.category() == ErrorCategory::unknown_variable) l = locate(e.subject(), nm.loc);
        else if (it != vars.end()) l = it->second.loc;
      }
      diags_.push_back({e.category(), e.what(), l});
      return std::nullopt;
    }
  }

  std::vector<int> range_decl(const Token& var) {
    const Token open = expect("{", "'{' to start the range");
    std::vector<int> values;
    std::vector<Location> locs;
    do {
      const Token at = peek();
      const auto lo = integer("a range value");
      if (accept("..")) {
        const Token hi_tok = peek();
        const auto hi = integer("the range upper bound");
        if (hi < lo) fail(hi_tok, "empty range " + std::to_string(lo) + ".." + std::to_string(hi),
                          ErrorCategory::range_violation);
        if (hi - lo > 100000) fail(hi_tok, "range too large", ErrorCategory::range_violation);
        for (auto v = lo; v <= hi; ++v) values.push_back(static_cast<int>(v));
      } else {
        if (std::find(values.begin(), values.end(), static_cast<int>(lo)) != values.end())
          fail(at, "value " + std::to_string(lo) + " listed twice in the range of '" + var.text + "'",
               ErrorCategory::range_violation);
        values.push_back(static_cast<int>(lo));
      }
    } while (accept(","));
    close(open, "}");
    std::sort(values.begin(), values.end());
    if (std::adjacent_find(values.begin(), values.end()) != values.end())
      fail(var, "range of '" + var.text + "' lists a value twice", ErrorCategory::range_violation);
    return values;
  }

  NormalityOrder normality_block() {
    const Token open = expect("{", "'{' after 'normality'");
    NormalityOrder o;
    while (!peek_symbol("}")) {
      if (at_end()) close(open, "}");
      if (accept_keyword("rank")) {
        WorldPattern p = world_pattern();
        expect("=", "'=' before the rank");
        o.ranks.push_back({std::move(p), small_int("a rank")});
      } else if (peek_symbol("[")) {
        WorldPattern a = world_pattern();
        expect(">=", "'>=' between world patterns");
        o.pairs.push_back({std::move(a), world_pattern()});
      } else {
        fail(peek(), "expected 'rank', a world pattern or '}', found " + describe(peek()));
      }
      expect(";", "';' after the declaration");
    }
    next();
    return o;
  }

  WorldPattern world_pattern() {
    const Token open = expect("[", "'[' to start a world pattern");
    WorldPattern p;
    // `[]` matches every world.
    if (peek_symbol("]")) {
      next();
      return p;
    }
    do {
      const Token v = name("a variable");
      mention(v);
      for (const auto& s : p.settings)
        if (s.variable == v.text)
          fail(v, "variable '" + v.text + "' appears twice in a world pattern", ErrorCategory::duplicate_name);
      expect("=", "'=' after the variable");
      p.settings.push_back({v.text, small_int("a value")});
    } while (accept(","));
    close(open, "]");
    return p;
  }

  // -- epistemic states -----------------------------------------------------
  StateDecl state_decl() {
    const Token kw = next();
    StateDecl s;
    s.name = name("a state").text;
    s.loc = kw.loc;
    const Token open = expect("{", "'{' after the state name");
    while (!peek_symbol("}")) {
      if (at_end()) close(open, "}");
      const Token sk = peek();
      expect_keyword("situation");
      SituationDecl sit;
      sit.loc = sk.loc;
      expect_keyword("model");
      expect("=", "'=' after 'model'");
      const Token m = name("a model");
      sit.model = m.text;
      sit.model_loc = m.loc;
      expect_keyword("ctx");
      const Token po = expect("(", "'(' after 'ctx'");
      if (!peek_symbol(")")) {
        do {
          const Token v = name("a variable");
          expect("=", "'=' after the variable");
          sit.context.push_back({v.text, small_int("a value")});
          sit.context_locs.push_back(v.loc);
        } while (accept(","));
      }
      close(po, ")");
      expect_keyword("prob");
      expect("=", "'=' after 'prob'");
      sit.probability = rational();
      expect(";", "';' after the situation");
      s.situations.push_back(std::move(sit));
    }
    next();
    if (s.situations.empty()) fail(previous(), "a state needs at least one situation", ErrorCategory::invalid_state);
    return s;
  }

  // -- equation bodies -------------------------------------------------------
  Expr expr() {
    if (peek_keyword("if")) return if_expr();
    return or_expr();
  }

  Expr if_expr() {
    next();
    Expr c = expr();
    expect_keyword("then");
    Expr a = expr();
    expect_keyword("else");
    Expr b = expr();
    return Expr::ite(std::move(c), std::move(a), std::move(b));
  }

  Expr or_expr() {
    Expr e = and_expr();
    while (accept("||")) e = Expr::binary(Op::logical_or, std::move(e), and_expr());
    return e;
  }
  Expr and_expr() {
    Expr e = not_expr();
    while (accept("&&")) e = Expr::binary(Op::logical_and, std::move(e), not_expr());
    return e;
  }
  Expr not_expr() {
    if (accept("!")) return Expr::negate(not_expr());
    return cmp_expr();
  }
  Expr cmp_expr() {
    Expr a = add_expr();
    Op op;
    if (peek_symbol("==")) op = Op::eq;
    else if (peek_symbol("!=")) op = Op::ne;
    else if (peek_symbol("<")) op = Op::lt;
    else if (peek_symbol("<=")) op = Op::le;
    else if (peek_symbol(">")) op = Op::gt;
    else if (peek_symbol(">=")) op = Op::ge;
    else if (peek_symbol("<-")) {
      // `a<-1` in an expression is `a < -1`.
      next();
      Expr b = add_expr_after_minus();
      return Expr::binary(Op::lt, std::move(a), std::move(b));
    } else {
      return a;
    }
    next();
    return Expr::binary(op, std::move(a), add_expr());
  }
  Expr add_expr_after_minus() {
    Expr e = negate_expr(mul_expr_from(unary_expr()));
    return add_tail(std::move(e));
  }
  static Expr negate_expr(Expr e) {
    if (e.op == Op::literal) return Expr::lit(-e.value);
    return Expr::binary(Op::sub, Expr::lit(0), std::move(e));
  }
  Expr add_expr() { return add_tail(mul_expr()); }
  Expr add_tail(Expr e) {
    while (peek_symbol("+") || peek_symbol("-")) {
      const Op op = next().text == "+" ? Op::add : Op::sub;
      e = Expr::binary(op, std::move(e), mul_expr());
    }
    return e;
  }
  Expr mul_expr() { return mul_expr_from(unary_expr()); }
  Expr mul_expr_from(Expr e) {
    while (accept("*")) e = Expr::binary(Op::mul, std::move(e), unary_expr());
    return e;
  }
  Expr unary_expr() {
    if (accept("-")) return negate_expr(unary_expr());
    return primary();
  }
  Expr primary() {
    const Token t = peek();
    if (t.kind == Token::Kind::integer) {
      next();
      return Expr::lit(static_cast<int>(t.value));
    }
    if (t.kind == Token::Kind::ident) {
      if (t.text == "if") return if_expr();
      if (t.text == "min" || t.text == "max") {
        next();
        const Token open = expect("(", "'(' after '" + t.text + "'");
        Expr a = expr();
        expect(",", "',' between the arguments of '" + t.text + "'");
        Expr b = expr();
        close(open, ")");
        return Expr::binary(t.text == "min" ? Op::min : Op::max, std::move(a), std::move(b));
      }
      if (is_reserved(t.text)) fail(t, "unexpected '" + t.text + "' in an expression");
      next();
      mention(t);
      return Expr::var(t.text);
    }
    if (peek_symbol("(")) {
      const Token open = next();
      Expr e = expr();
      close(open, ")");
      return e;
    }
    fail(t, "expected an expression, found " + describe(t));
  }

  // -- formulas -----------------------------------------------------------
  CausalFormula causal_formula() {
    Intervention prefix;
    if (peek_symbol("[")) prefix = intervention_list();
    return CausalFormula(std::move(prefix), event_formula());
  }

  Intervention intervention_list() {
    const Token open = expect("[", "'['");
    std::vector<Setting> s;
    if (!peek_symbol("]")) {
      do {
        const Token v = name("a variable");
        mention(v);
        for (const auto& e : s)
          if (e.variable == v.text)
            fail(v, "variable '" + v.text + "' is set twice", ErrorCategory::duplicate_name);
        expect("<-", "'<-' after the variable");
        s.push_back({v.text, small_int("a value")});
      } while (accept(","));
    }
    close(open, "]");
    return Intervention(std::move(s));
  }

  EventFormula event_formula() {
    EventFormula a = event_conj();
    if (accept("|") || accept("||")) return EventFormula::disjunction(std::move(a), event_formula());
    return a;
  }
  EventFormula event_conj() {
    EventFormula a = event_unary();
    if (accept("&") || accept("&&")) return EventFormula::conjunction(std::move(a), event_conj());
    return a;
  }
  EventFormula event_unary() {
    if (accept("!")) return EventFormula::negation(event_unary());
    if (peek_symbol("(")) {
      const Token open = next();
      EventFormula f = event_formula();
      close(open, ")");
      return f;
    }
    return EventFormula::atom(primitive_event());
  }
  PrimitiveEvent primitive_event() {
    const Token v = name("a variable");
    mention(v);
    expect("=", "'=' after the variable");
    return {v.text, small_int("a value")};
  }

  Conjunction conjunction() {
    Conjunction c;
    do {
      PrimitiveEvent e = primitive_event();
      for (const auto& x : c)
        if (x.variable == e.variable)
          fail(previous(), "variable '" + e.variable + "' appears twice", ErrorCategory::duplicate_name);
      c.push_back(std::move(e));
    } while (accept("&") || accept("&&"));
    return c;
  }

  // -- queries ------------------------------------------------------------
  ContextSpec where_clause() {
    expect_keyword("in");
    ContextSpec w;
    if (accept_keyword("model")) {
      const Token m = name("a model");
      w.model = m.text;
      w.model_loc = m.loc;
    }
    expect_keyword("ctx");
    const Token open = expect("(", "'(' after 'ctx'");
    if (!peek_symbol(")")) {
      do {
        const Token v = name("a variable");
        mention(v);
        expect("=", "'=' after the variable");
        w.assigns.push_back({v.text, small_int("a value")});
        w.assign_locs.push_back(v.loc);
      } while (accept(","));
    }
    close(open, ")");
    return w;
  }

  void trailing_options(Query& q) {
    while (true) {
      if (peek_keyword("preliminary") || peek_keyword("extended")) {
        const Token t = next();
        if (q.semantics) fail(t, "semantics given twice");
        q.semantics = t.text == "preliminary" ? Semantics::preliminary : Semantics::extended;
      } else if (peek_keyword("using")) {
        const Token t = next();
        if (q.strategy) fail(t, "strategy given twice");
        q.strategy = strategy();
      } else if (peek_keyword("upto") && q.kind == Query::Kind::causes) {
        next();
        const Token n = peek();
        const auto v = integer("a conjunct count");
        if (v < 1) fail(n, "conjunct count must be at least 1");
        q.max_conjuncts = static_cast<std::size_t>(v);
      } else {
        return;
      }
    }
  }

  ScoringStrategy strategy() {
    const Token t = ident("a strategy");
    if (t.text == "reciprocal") return ScoringStrategy::reciprocal();
    if (t.text == "exponential") return ScoringStrategy::exponential();
    if (t.text == "ways") return ScoringStrategy::ways_fraction();
    if (t.text == "weighted") {
      const Token open = expect("(", "'(' after 'weighted'");
      std::map<std::string, Rational> w;
      do {
        const Token v = name("a variable");
        mention(v);
        expect("=", "'=' after the variable");
        if (w.count(v.text)) fail(v, "weight for '" + v.text + "' given twice", ErrorCategory::duplicate_name);
        w[v.text] = rational();
      } while (accept(","));
      close(open, ")");
      return ScoringStrategy::weighted(std::move(w));
    }
    fail(t, "unknown strategy '" + t.text + "' (expected reciprocal, exponential, weighted or ways)");
  }

  Query query() {
    mentions_.clear();
    const Token kw = peek();
    if (kw.kind != Token::Kind::ident) fail(kw, "expected a query, found " + describe(kw));
    Query q;
    q.loc = kw.loc;
    const std::string& k = kw.text;
    next();
    if (k == "solve") {
      q.kind = Query::Kind::solve;
      if (peek_symbol("[")) q.prefix = intervention_list();
      q.where = where_clause();
    } else if (k == "eval") {
      q.kind = Query::Kind::eval;
      q.formula = causal_formula();
      q.where = where_clause();
    } else if (k == "cause" || k == "resp" || k == "responsibility") {
      q.kind = k == "cause" ? Query::Kind::cause : Query::Kind::responsibility;
      q.subject = conjunction();
      expect_keyword("of");
      q.outcome = event_formula();
      q.where = where_clause();
    } else if (k == "ness") {
      q.kind = Query::Kind::ness;
      q.subject = {primitive_event()};
      expect_keyword("of");
      q.outcome = event_formula();
      q.where = where_clause();
    } else if (k == "causes") {
      q.kind = Query::Kind::causes;
      expect_keyword("of");
      q.outcome = event_formula();
      q.where = where_clause();
    } else if (k == "blame") {
      q.kind = Query::Kind::blame;
      expect_keyword("action");
      do {
        const Token v = name("a variable");
        mention(v);
        for (const auto& s : q.subject)
          if (s.variable == v.text) fail(v, "variable '" + v.text + "' is set twice", ErrorCategory::duplicate_name);
        expect("<-", "'<-' after the variable");
        q.subject.push_back({v.text, small_int("a value")});
      } while (accept(","));
      expect_keyword("of");
      q.outcome = event_formula();
      expect_keyword("over");
      expect_keyword("state");
      const Token s = name("a state");
      q.state = s.text;
      mentions_.emplace_back(s.text, s.loc);
    } else {
      fail(kw, "unknown query '" + k + "' (expected solve, eval, cause, resp, blame, ness or causes)");
    }
    trailing_options(q);
    q.mentions = mentions_;
    if (q.where.model) q.mentions.emplace_back(*q.where.model, q.where.model_loc);
    return q;
  }

  std::string origin_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic> diags_;
  std::vector<std::pair<std::string, Location>> mentions_;
};

}  // namespace detail

inline Document parse_document(std::string_view text, const std::string& origin = "<input>") {
  return detail::Parser(text, origin).document();
}

/// The first model of a document.
inline ModelDecl parse_model(std::string_view text, const std::string& origin = "<input>") {
  auto doc = parse_document(text, origin);
  if (doc.models.empty())
    throw ParseError({Diagnostic{ErrorCategory::syntax, "no model in document", Location{origin, 1, 1, 1}}});
  return std::move(doc.models.front());
}

inline Query parse_query(std::string_view text, const std::string& origin = "<query>") {
  return detail::Parser(text, origin).single_query();
}

inline std::vector<Statement> parse_statements(std::string_view text, const std::string& origin = "<queries>") {
  return detail::Parser(text, origin).statements();
}

inline CausalFormula parse_formula(std::string_view text, const std::string& origin = "<formula>") {
  return detail::Parser(text, origin).causal_formula_only();
}

inline Expr parse_expr(std::string_view text, const std::string& origin = "<expr>") {
  return detail::Parser(text, origin).expr_only();
}

// ---------------------------------------------------------------------------
// Printing (canonical, fully parenthesized; reparses to an equal value)

inline std::string print(const Expr& e) {
  switch (e.op) {
    case Op::literal: return std::to_string(e.value);
    case Op::variable: return e.name;
    case Op::logical_not: return "(!" + print(e.args[0]) + ")";
    case Op::if_then_else:
      return "(if " + print(e.args[0]) + " then " + print(e.args[1]) + " else " + print(e.args[2]) + ")";
    case Op::min: return "min(" + print(e.args[0]) + ", " + print(e.args[1]) + ")";
    case Op::max: return "max(" + print(e.args[0]) + ", " + print(e.args[1]) + ")";
    default: break;
  }
  const char* op = "+";
  switch (e.op) {
    case Op::add: op = "+"; break;
    case Op::sub: op = "-"; break;
    case Op::mul: op = "*"; break;
    case Op::eq: op = "=="; break;
    case Op::ne: op = "!="; break;
    case Op::lt: op = "<"; break;
    case Op::le: op = "<="; break;
    case Op::gt: op = ">"; break;
    case Op::ge: op = ">="; break;
    case Op::logical_and: op = "&&"; break;
    case Op::logical_or: op = "||"; break;
    default: break;
  }
  return "(" + print(e.args[0]) + " " + op + " " + print(e.args[1]) + ")";
}

inline std::string print(const Setting& s) { return s.variable + "=" + std::to_string(s.value); }

inline std::string print(const EventFormula& f) {
  using K = EventFormula::Kind;
  switch (f.kind()) {
    case K::event: return print(f.event());
    case K::negation: return "!(" + print(f.operand()) + ")";
    case K::conjunction: return "(" + print(f.lhs()) + " & " + print(f.rhs()) + ")";
    case K::disjunction: return "(" + print(f.lhs()) + " | " + print(f.rhs()) + ")";
  }
  return {};
}

inline std::string print(const Intervention& iv) {
  std::string s = "[";
  for (std::size_t i = 0; i < iv.settings().size(); ++i) {
    if (i) s += ", ";
    s += iv.settings()[i].variable + "<-" + std::to_string(iv.settings()[i].value);
  }
  return s + "]";
}

inline std::string print(const CausalFormula& f) {
  return (f.prefix.empty() ? std::string() : print(f.prefix)) + print(f.matrix);
}

inline std::string print_conjunction(const Conjunction& c, std::string_view sep = " & ") {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += sep;
    s += print(c[i]);
  }
  return s;
}

inline std::string print(const WorldPattern& p) { return "[" + print_conjunction(p.settings, ", ") + "]"; }

inline std::string print_range(const std::vector<int>& r) {
  std::string s = "{";
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? ", " : "") + std::to_string(r[i]);
  return s + "}";
}

inline std::string print(const CausalModel& m, const std::optional<NormalityOrder>& norm = std::nullopt) {
  std::ostringstream os;
  os << "model " << m.name() << " {\n";
  for (const auto& v : m.signature().exogenous()) os << "  exogenous " << v.name << " : " << print_range(v.range) << ";\n";
  for (std::size_t i = 0; i < m.endogenous_count(); ++i) {
    const auto& v = m.signature().endogenous()[i];
    os << "  endogenous " << v.name << " : " << print_range(v.range) << " = " << print(m.equation(i).body) << ";\n";
  }
  if (norm) {
    os << "  normality {\n";
    for (const auto& r : norm->ranks) os << "    rank " << print(r.pattern) << " = " << r.rank << ";\n";
    for (const auto& p : norm->pairs) os << "    " << print(p.better) << " >= " << print(p.worse) << ";\n";
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

inline std::string print(const ModelDecl& m) { return print(m.model, m.normality); }

inline std::string print(const StateDecl& s) {
  std::ostringstream os;
  os << "state " << s.name << " {\n";
  for (const auto& sit : s.situations)
    os << "  situation model = " << sit.model << " ctx(" << print_conjunction(sit.context, ", ")
       << ") prob = " << to_string(sit.probability) << ";\n";
  os << "}\n";
  return os.str();
}

inline std::string print(const Document& d) {
  std::string s;
  for (const auto& m : d.models) s += print(m);
  for (const auto& st : d.states) s += print(st);
  return s;
}

inline std::string print_strategy(const ScoringStrategy& st) {
  if (st.kind != ScoringStrategy::Kind::weighted) return std::string(strategy_name(st.kind));
  std::string s = "weighted(";
  bool first = true;
  for (const auto& [v, w] : st.weights) {
    s += (first ? "" : ", ") + v + "=" + to_string(w);
    first = false;
  }
  return s + ")";
}

inline std::string print(const Query& q) {
  std::string s(kind_name(q.kind));
  auto where = [&] {
    std::string w = " in ";
    if (q.where.model) w += "model " + *q.where.model + " ";
    return w + "ctx(" + print_conjunction(q.where.assigns, ", ") + ")";
  };
  switch (q.kind) {
    case Query::Kind::solve:
      if (!q.prefix.empty()) s += " " + print(q.prefix);
      s += where();
      break;
    case Query::Kind::eval: s += " " + print(*q.formula) + where(); break;
    case Query::Kind::cause:
    case Query::Kind::responsibility:
    case Query::Kind::ness: s += " " + print_conjunction(q.subject) + " of " + print(*q.outcome) + where(); break;
    case Query::Kind::causes: s += " of " + print(*q.outcome) + where(); break;
    case Query::Kind::blame: {
      s += " action ";
      for (std::size_t i = 0; i < q.subject.size(); ++i)
        s += (i ? ", " : "") + q.subject[i].variable + "<-" + std::to_string(q.subject[i].value);
      s += " of " + print(*q.outcome) + " over state " + q.state;
      break;
    }
  }
  if (q.semantics) s += q.semantics == Semantics::preliminary ? " preliminary" : " extended";
  if (q.strategy) s += " using " + print_strategy(*q.strategy);
  if (q.kind == Query::Kind::causes && q.max_conjuncts != 1) s += " upto " + std::to_string(q.max_conjuncts);
  return s;
}

/// FNV-1a over the canonical print of a model.
inline std::string model_hash(const ModelDecl& m) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : print(m)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* const kHex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
  return out;
}

// ---------------------------------------------------------------------------
// Workspace: the set of loaded models and states

class Workspace {
 public:
  /// Adds every model and state of a document; names must stay unique.
  void add(Document doc) {
    std::vector<Diagnostic> diags;
    for (auto& m : doc.models) {
      const std::string name = m.model.name();
      if (models_.count(name) || states_.count(name)) {
        diags.push_back({ErrorCategory::duplicate_name, "'" + name + "' is already loaded", m.loc});
        continue;
      }
      order_.push_back(name);
      auto decl = std::make_shared<ModelDecl>(std::move(m));
      ExtendedModel ext = decl->extended();
      models_.emplace(name, Entry{std::move(decl), std::move(ext)});
    }
    for (auto& s : doc.states) {
      if (models_.count(s.name) || states_.count(s.name)) {
        diags.push_back({ErrorCategory::duplicate_name, "'" + s.name + "' is already loaded", s.loc});
        continue;
      }
      states_.emplace(s.name, std::move(s));
    }
    if (!diags.empty()) throw ParseError(std::move(diags));
  }

  void load_text(std::string_view text, const std::string& origin) { add(parse_document(text, origin)); }

  void load_file(const std::filesystem::path& path) { load_text(read_file(path), path.string()); }

  static std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
      throw ParseError({Diagnostic{ErrorCategory::unknown_name, "cannot read file '" + path.string() + "'",
                                   Location{path.string(), 1, 1, 1}}});
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

  bool has_model(const std::string& name) const { return models_.count(name) > 0; }
  const std::vector<std::string>& model_names() const { return order_; }

  const ModelDecl& decl(const std::string& name) const { return *models_.at(name).decl; }
  const ExtendedModel& model(const std::string& name) const { return models_.at(name).ext; }

  /// The named model, or the only one loaded when no name is given.
  const std::string& resolve_model(const std::optional<std::string>& name, const Location& loc) const {
    if (name) {
      auto it = models_.find(*name);
      if (it == models_.end())
        throw ParseError({Diagnostic{ErrorCategory::unknown_name, "no model named '" + *name + "'", loc}});
      return it->first;
    }
    if (order_.size() == 1) return order_.front();
    throw ParseError({Diagnostic{ErrorCategory::unknown_name,
                                 order_.empty() ? "no model loaded"
                                                : "several models loaded; name one with 'in model NAME'",
                                 loc}});
  }

  EpistemicState state(const std::string& name, const Location& loc) const {
    auto it = states_.find(name);
    if (it == states_.end())
      throw ParseError({Diagnostic{ErrorCategory::unknown_name, "no state named '" + name + "'", loc}});
    const StateDecl& s = it->second;
    std::vector<Situation> sits;
    std::vector<Rational> probs;
    for (const auto& sit : s.situations) {
      auto m = models_.find(sit.model);
      if (m == models_.end())
        throw ParseError(
            {Diagnostic{ErrorCategory::unknown_name, "no model named '" + sit.model + "'", sit.model_loc}});
      try {
        sits.push_back({m->second.ext, make_context(m->second.ext.model().signature(), sit.context)});
      } catch (const Error& e) {
        Location l = sit.loc;
        for (std::size_t i = 0; i < sit.context.size(); ++i)
          if (sit.context[i].variable == e.subject()) l = sit.context_locs[i];
        throw ParseError({Diagnostic{e.category(), e.what(), l}});
      }
      probs.push_back(sit.probability);
    }
    try {
      return EpistemicState(std::move(sits), std::move(probs));
    } catch (const Error& e) {
      throw ParseError({Diagnostic{e.category(), e.what(), s.loc}});
    }
  }

 private:
  struct Entry {
    std::shared_ptr<ModelDecl> decl;
    ExtendedModel ext;
  };
  std::map<std::string, Entry> models_;
  std::vector<std::string> order_;
  std::map<std::string, StateDecl> states_;
};

}  // namespace causelab

#endif  // CAUSELAB_DSL_HPP
