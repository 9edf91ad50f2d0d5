#ifndef CAUSELAB_MODEL_HPP
#define CAUSELAB_MODEL_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace causelab {

enum class ErrorCategory {
  syntax,
  unknown_variable,
  range_violation,
  cycle,
  non_total_equation,
  duplicate_name,
  unknown_name,
  invalid_state,
  invalid_argument,
  resource_cap,
};

inline std::string_view category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::syntax: return "syntax";
    case ErrorCategory::unknown_variable: return "unknown variable";
    case ErrorCategory::range_violation: return "range violation";
    case ErrorCategory::cycle: return "cycle";
    case ErrorCategory::non_total_equation: return "non-total equation";
    case ErrorCategory::duplicate_name: return "duplicate name";
    case ErrorCategory::unknown_name: return "unknown name";
    case ErrorCategory::invalid_state: return "invalid state";
    case ErrorCategory::invalid_argument: return "invalid argument";
    case ErrorCategory::resource_cap: return "resource cap";
  }
  return "error";
}

/// Every engine-level failure. `subject` names the offending variable (or
/// model/state) when there is one, so the parser can point at its token.
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message, std::string subject = {})
      : std::runtime_error(message), category_(category), subject_(std::move(subject)) {}

  ErrorCategory category() const noexcept { return category_; }
  const std::string& subject() const noexcept { return subject_; }

 private:
  ErrorCategory category_;
  std::string subject_;
};

/// Thrown when exact search would exceed the configured variable cap.
class CapExceeded : public Error {
 public:
  explicit CapExceeded(const std::string& message) : Error(ErrorCategory::resource_cap, message) {}
};

/// `variable = value`; the building block of interventions, causes, patterns.
struct Setting {
  std::string variable;
  int value = 0;

  auto operator<=>(const Setting&) const = default;
};

using Conjunction = std::vector<Setting>;

// ---------------------------------------------------------------------------
// Signature

struct Variable {
  std::string name;
  std::vector<int> range;  // ascending, unique

  bool contains(int v) const { return std::binary_search(range.begin(), range.end(), v); }
  bool operator==(const Variable&) const = default;
};

enum class VarKind { exogenous, endogenous };

struct VarRef {
  VarKind kind = VarKind::endogenous;
  std::size_t index = 0;

  auto operator<=>(const VarRef&) const = default;
};

/// Marks "not intervened" in dense pin vectors.
inline constexpr int kFree = std::numeric_limits<int>::min();

class Signature {
 public:
  Signature() = default;

  Signature(std::vector<Variable> exogenous, std::vector<Variable> endogenous)
      : exogenous_(std::move(exogenous)), endogenous_(std::move(endogenous)) {
    auto add = [this](Variable& v, VarKind kind, std::size_t index) {
      if (v.range.empty())
        throw Error(ErrorCategory::range_violation, "variable '" + v.name + "' has an empty range",
                    v.name);
      std::vector<int> sorted = v.range;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(ErrorCategory::range_violation,
                    "variable '" + v.name + "' lists a value twice in its range", v.name);
      if (sorted.front() == kFree)
        throw Error(ErrorCategory::range_violation, "value out of supported bounds", v.name);
      v.range = std::move(sorted);
      if (!index_.emplace(v.name, VarRef{kind, index}).second)
        throw Error(ErrorCategory::duplicate_name, "variable '" + v.name + "' declared twice",
                    v.name);
    };
    for (std::size_t i = 0; i < exogenous_.size(); ++i) add(exogenous_[i], VarKind::exogenous, i);
    for (std::size_t i = 0; i < endogenous_.size(); ++i)
      add(endogenous_[i], VarKind::endogenous, i);
  }

  const std::vector<Variable>& exogenous() const { return exogenous_; }
  const std::vector<Variable>& endogenous() const { return endogenous_; }

  std::optional<VarRef> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const Variable& variable(VarRef ref) const {
    return ref.kind == VarKind::exogenous ? exogenous_[ref.index] : endogenous_[ref.index];
  }

  /// Resolves an endogenous name, throwing on unknown or exogenous names.
  std::size_t endogenous_index(std::string_view name) const {
    auto ref = find(name);
    if (!ref)
      throw Error(ErrorCategory::unknown_variable, "unknown variable '" + std::string(name) + "'",
                  std::string(name));
    if (ref->kind != VarKind::endogenous)
      throw Error(ErrorCategory::unknown_variable,
                  "'" + std::string(name) + "' is exogenous; only endogenous variables are allowed here",
                  std::string(name));
    return ref->index;
  }

  /// Resolves `setting` against the endogenous variables and checks its value.
  std::size_t bind_setting(const Setting& s) const {
    auto idx = endogenous_index(s.variable);
    if (!endogenous_[idx].contains(s.value))
      throw Error(ErrorCategory::range_violation,
                  "value " + std::to_string(s.value) + " is outside the range of '" + s.variable + "'",
                  s.variable);
    return idx;
  }

  bool operator==(const Signature& o) const {
    return exogenous_ == o.exogenous_ && endogenous_ == o.endogenous_;
  }

 private:
  std::vector<Variable> exogenous_;
  std::vector<Variable> endogenous_;
  std::unordered_map<std::string, VarRef> index_;
};

// ---------------------------------------------------------------------------
// Equation bodies

enum class Op {
  literal,
  variable,
  add,
  sub,
  mul,
  min,
  max,
  eq,
  ne,
  lt,
  le,
  gt,
  ge,
  logical_and,
  logical_or,
  logical_not,
  if_then_else,
};

/// Expression tree over variable names. Booleans are 0/1 integers.
struct Expr {
  Op op = Op::literal;
  int value = 0;
  std::string name;
  std::vector<Expr> args;

  static Expr lit(int v) { return Expr{Op::literal, v, {}, {}}; }
  static Expr var(std::string n) { return Expr{Op::variable, 0, std::move(n), {}}; }
  static Expr binary(Op op, Expr a, Expr b) {
    Expr e{op, 0, {}, {}};
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
  }
  static Expr negate(Expr a) {
    Expr e{Op::logical_not, 0, {}, {}};
    e.args.push_back(std::move(a));
    return e;
  }
  static Expr ite(Expr c, Expr t, Expr f) {
    Expr e{Op::if_then_else, 0, {}, {}};
    e.args.push_back(std::move(c));
    e.args.push_back(std::move(t));
    e.args.push_back(std::move(f));
    return e;
  }

  bool operator==(const Expr&) const = default;

  template <typename F>
  void for_each_variable(F&& f) const {
    if (op == Op::variable) f(name);
    for (const auto& a : args) a.for_each_variable(f);
  }
};

struct Equation {
  std::string target;
  Expr body;

  bool operator==(const Equation&) const = default;
};

namespace detail {

enum class Code : std::uint8_t {
  push_const,
  load_exo,
  load_endo,
  add,
  sub,
  mul,
  min,
  max,
  eq,
  ne,
  lt,
  le,
  gt,
  ge,
  land,
  lor,
  lnot,
  jump_if_zero,
  jump,
};

struct Instr {
  Code code;
  int arg;
};

/// Postfix form of an equation body; the solver's inner loop.
class Program {
 public:
  Program() = default;

  Program(const Expr& e, const Signature& sig) {
    std::size_t depth = 0;
    emit(e, sig, depth);
  }

  int eval(std::span<const int> ctx, std::span<const int> world) const {
    std::array<std::int64_t, 64> small{};
    std::vector<std::int64_t> big;
    std::int64_t* stack = small.data();
    if (max_stack_ > small.size()) {
      big.resize(max_stack_);
      stack = big.data();
    }
    std::size_t sp = 0;
    const std::size_t n = code_.size();
    for (std::size_t pc = 0; pc < n; ++pc) {
      const Instr in = code_[pc];
      switch (in.code) {
        case Code::push_const: stack[sp++] = in.arg; break;
        case Code::load_exo: stack[sp++] = ctx[static_cast<std::size_t>(in.arg)]; break;
        case Code::load_endo: stack[sp++] = world[static_cast<std::size_t>(in.arg)]; break;
        case Code::lnot: stack[sp - 1] = stack[sp - 1] == 0 ? 1 : 0; break;
        case Code::jump_if_zero:
          if (stack[--sp] == 0) pc = static_cast<std::size_t>(in.arg) - 1;
          break;
        case Code::jump: pc = static_cast<std::size_t>(in.arg) - 1; break;
        default: {
          const std::int64_t b = stack[--sp];
          std::int64_t& a = stack[sp - 1];
          switch (in.code) {
            case Code::add: a = a + b; break;
            case Code::sub: a = a - b; break;
            case Code::mul: a = a * b; break;
            case Code::min: a = std::min(a, b); break;
            case Code::max: a = std::max(a, b); break;
            case Code::eq: a = a == b; break;
            case Code::ne: a = a != b; break;
            case Code::lt: a = a < b; break;
            case Code::le: a = a <= b; break;
            case Code::gt: a = a > b; break;
            case Code::ge: a = a >= b; break;
            case Code::land: a = (a != 0) && (b != 0); break;
            case Code::lor: a = (a != 0) || (b != 0); break;
            default: break;
          }
        }
      }
    }
    const std::int64_t r = stack[0];
    if (r < std::numeric_limits<int>::min() + 1 || r > std::numeric_limits<int>::max())
      return kFree;  // never in any range
    return static_cast<int>(r);
  }

 private:
  void push(Code c, int arg, std::size_t& depth, int delta) {
    code_.push_back({c, arg});
    if (delta > 0) {
      depth += static_cast<std::size_t>(delta);
      max_stack_ = std::max(max_stack_, depth);
    } else {
      depth -= static_cast<std::size_t>(-delta);
    }
  }

  void emit(const Expr& e, const Signature& sig, std::size_t& depth) {
    switch (e.op) {
      case Op::literal: push(Code::push_const, e.value, depth, 1); return;
      case Op::variable: {
        auto ref = sig.find(e.name);
        if (!ref)
          throw Error(ErrorCategory::unknown_variable, "unknown variable '" + e.name + "'", e.name);
        push(ref->kind == VarKind::exogenous ? Code::load_exo : Code::load_endo,
             static_cast<int>(ref->index), depth, 1);
        return;
      }
      case Op::logical_not:
        emit(e.args[0], sig, depth);
        push(Code::lnot, 0, depth, 0);
        return;
      case Op::if_then_else: {
        emit(e.args[0], sig, depth);
        const std::size_t jz = code_.size();
        push(Code::jump_if_zero, 0, depth, -1);
        emit(e.args[1], sig, depth);
        const std::size_t jmp = code_.size();
        push(Code::jump, 0, depth, -1);  // the else branch pushes the value back
        code_[jz].arg = static_cast<int>(code_.size());
        emit(e.args[2], sig, depth);
        code_[jmp].arg = static_cast<int>(code_.size());
        return;
      }
      default: break;
    }
    emit(e.args[0], sig, depth);
    emit(e.args[1], sig, depth);
    Code c = Code::add;
    switch (e.op) {
      case Op::add: c = Code::add; break;
      case Op::sub: c = Code::sub; break;
      case Op::mul: c = Code::mul; break;
      case Op::min: c = Code::min; break;
      case Op::max: c = Code::max; break;
      case Op::eq: c = Code::eq; break;
      case Op::ne: c = Code::ne; break;
      case Op::lt: c = Code::lt; break;
      case Op::le: c = Code::le; break;
      case Op::gt: c = Code::gt; break;
      case Op::ge: c = Code::ge; break;
      case Op::logical_and: c = Code::land; break;
      case Op::logical_or: c = Code::lor; break;
      default: break;
    }
    push(c, 0, depth, -1);
  }

  std::vector<Instr> code_;
  std::size_t max_stack_ = 1;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Contexts, worlds, interventions

/// Values of the exogenous variables, in declaration order.
struct Context {
  std::vector<int> values;
  auto operator<=>(const Context&) const = default;
};

/// Values of the endogenous variables, in declaration order.
struct World {
  std::vector<int> values;
  auto operator<=>(const World&) const = default;
};

class Intervention {
 public:
  Intervention() = default;

  explicit Intervention(std::vector<Setting> settings) : settings_(std::move(settings)) {
    for (std::size_t i = 0; i < settings_.size(); ++i)
      for (std::size_t j = i + 1; j < settings_.size(); ++j)
        if (settings_[i].variable == settings_[j].variable)
          throw Error(ErrorCategory::duplicate_name,
                      "variable '" + settings_[i].variable + "' is set twice", settings_[i].variable);
  }

  const std::vector<Setting>& settings() const { return settings_; }
  bool empty() const { return settings_.empty(); }
  bool operator==(const Intervention&) const = default;

 private:
  std::vector<Setting> settings_;
};

/// Dense pin vector (kFree where untouched) for an intervention.
inline std::vector<int> bind_pins(const Signature& sig, const Intervention& iv) {
  std::vector<int> pins(sig.endogenous().size(), kFree);
  for (const auto& s : iv.settings()) pins[sig.bind_setting(s)] = s.value;
  return pins;
}

inline void validate_context(const Signature& sig, const Context& ctx) {
  if (ctx.values.size() != sig.exogenous().size())
    throw Error(ErrorCategory::range_violation, "context does not assign every exogenous variable");
  for (std::size_t i = 0; i < ctx.values.size(); ++i)
    if (!sig.exogenous()[i].contains(ctx.values[i]))
      throw Error(ErrorCategory::range_violation,
                  "value " + std::to_string(ctx.values[i]) + " is outside the range of '" +
                      sig.exogenous()[i].name + "'",
                  sig.exogenous()[i].name);
}

/// Builds a total context from named settings.
inline Context make_context(const Signature& sig, std::span<const Setting> settings) {
  Context ctx{std::vector<int>(sig.exogenous().size(), kFree)};
  for (const auto& s : settings) {
    auto ref = sig.find(s.variable);
    if (!ref)
      throw Error(ErrorCategory::unknown_variable, "unknown variable '" + s.variable + "'",
                  s.variable);
    if (ref->kind != VarKind::exogenous)
      throw Error(ErrorCategory::unknown_variable,
                  "'" + s.variable + "' is endogenous; a context assigns exogenous variables",
                  s.variable);
    if (ctx.values[ref->index] != kFree)
      throw Error(ErrorCategory::duplicate_name, "variable '" + s.variable + "' assigned twice",
                  s.variable);
    if (!sig.exogenous()[ref->index].contains(s.value))
      throw Error(ErrorCategory::range_violation,
                  "value " + std::to_string(s.value) + " is outside the range of '" + s.variable + "'",
                  s.variable);
    ctx.values[ref->index] = s.value;
  }
  for (std::size_t i = 0; i < ctx.values.size(); ++i)
    if (ctx.values[i] == kFree)
      throw Error(ErrorCategory::range_violation,
                  "context leaves '" + sig.exogenous()[i].name + "' unassigned",
                  sig.exogenous()[i].name);
  return ctx;
}

inline Context make_context(const Signature& sig, std::initializer_list<Setting> settings) {
  return make_context(sig, std::span<const Setting>(settings.begin(), settings.size()));
}

// ---------------------------------------------------------------------------
// Causal model

/// A recursive structural causal model. Construction validates every
/// invariant (unique names, acyclicity, equation totality); afterwards the
/// model is an immutable value.
class CausalModel {
 public:
  /// Upper bound on the assignments enumerated to prove one equation total.
  static constexpr std::uint64_t kTotalityBudget = std::uint64_t{1} << 22;

  CausalModel() = default;

  CausalModel(std::string name, Signature signature, std::vector<Equation> equations)
      : name_(std::move(name)), signature_(std::move(signature)) {
    const auto& endo = signature_.endogenous();
    const std::size_t n = endo.size();
    std::vector<std::optional<Equation>> slots(n);
    for (auto& eq : equations) {
      auto ref = signature_.find(eq.target);
      if (!ref)
        throw Error(ErrorCategory::unknown_variable,
                    "equation for unknown variable '" + eq.target + "'", eq.target);
      if (ref->kind != VarKind::endogenous)
        throw Error(ErrorCategory::unknown_variable,
                    "exogenous variable '" + eq.target + "' cannot have an equation", eq.target);
      if (slots[ref->index])
        throw Error(ErrorCategory::duplicate_name, "two equations for '" + eq.target + "'",
                    eq.target);
      slots[ref->index] = std::move(eq);
    }
    equations_.reserve(n);
    parents_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!slots[i])
        throw Error(ErrorCategory::non_total_equation, "no equation for '" + endo[i].name + "'",
                    endo[i].name);
      equations_.push_back(std::move(*slots[i]));
      const auto& eq = equations_.back();
      eq.body.for_each_variable([&](const std::string& v) {
        auto ref = signature_.find(v);
        if (!ref)
          throw Error(ErrorCategory::unknown_variable,
                      "equation for '" + eq.target + "' references unknown variable '" + v + "'", v);
        if (ref->kind == VarKind::endogenous) {
          if (ref->index == i)
            throw Error(ErrorCategory::cycle, "cycle: " + eq.target + " -> " + eq.target,
                        eq.target);
          auto& ps = parents_[i];
          if (std::find(ps.begin(), ps.end(), ref->index) == ps.end()) ps.push_back(ref->index);
        }
      });
      std::sort(parents_[i].begin(), parents_[i].end());
    }
    compute_order();
    programs_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) programs_.emplace_back(equations_[i].body, signature_);
    for (std::size_t i = 0; i < n; ++i) check_total(i);
  }

  const std::string& name() const { return name_; }
  const Signature& signature() const { return signature_; }
  std::size_t endogenous_count() const { return signature_.endogenous().size(); }
  const std::vector<Equation>& equations() const { return equations_; }
  const Equation& equation(std::size_t endo) const { return equations_[endo]; }

  /// Solve order: topological, ties broken by declaration order.
  const std::vector<std::size_t>& order() const { return order_; }
  const std::vector<std::size_t>& parents(std::size_t endo) const { return parents_[endo]; }

  /// Solves into `out` with `pins` overriding equations (kFree = not pinned).
  void solve_into(std::span<const int> ctx, std::span<const int> pins, std::span<int> out) const {
    for (std::size_t i : order_) {
      const int pinned = pins.empty() ? kFree : pins[i];
      out[i] = pinned != kFree ? pinned : programs_[i].eval(ctx, out);
    }
  }

  bool operator==(const CausalModel& o) const {
    return name_ == o.name_ && signature_ == o.signature_ && equations_ == o.equations_;
  }

 private:
  void compute_order() {
    const std::size_t n = equations_.size();
    std::vector<std::size_t> indegree(n, 0);
    std::vector<std::vector<std::size_t>> children(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t p : parents_[i]) {
        ++indegree[i];
        children[p].push_back(i);
      }
    std::vector<bool> done(n, false);
    order_.clear();
    while (order_.size() < n) {
      std::size_t next = n;
      for (std::size_t i = 0; i < n; ++i)
        if (!done[i] && indegree[i] == 0) {
          next = i;
          break;
        }
      if (next == n) throw_cycle(done);
      done[next] = true;
      order_.push_back(next);
      for (std::size_t c : children[next]) --indegree[c];
    }
  }

  [[noreturn]] void throw_cycle(const std::vector<bool>& done) const {
    // Walk parent links among unsolved variables until one repeats.
    const auto& endo = signature_.endogenous();
    std::size_t start = 0;
    while (done[start]) ++start;
    std::vector<std::size_t> path;
    std::vector<int> seen_at(done.size(), -1);
    std::size_t cur = start;
    while (seen_at[cur] < 0) {
      seen_at[cur] = static_cast<int>(path.size());
      path.push_back(cur);
      for (std::size_t p : parents_[cur])
        if (!done[p]) {
          cur = p;
          break;
        }
    }
    std::vector<std::size_t> cycle(path.begin() + seen_at[cur], path.end());
    std::reverse(cycle.begin(), cycle.end());  // parent -> child reading order
    std::string text;
    for (std::size_t v : cycle) text += endo[v].name + " -> ";
    text += endo[cycle.front()].name;
    throw Error(ErrorCategory::cycle, "cycle: " + text, endo[cycle.front()].name);
  }

  void check_total(std::size_t i) const {
    const auto& target = signature_.endogenous()[i];
    std::vector<VarRef> refs;
    equations_[i].body.for_each_variable([&](const std::string& v) {
      auto ref = *signature_.find(v);
      if (std::find(refs.begin(), refs.end(), ref) == refs.end()) refs.push_back(ref);
    });
    std::uint64_t total = 1;
    for (const auto& r : refs) {
      total *= signature_.variable(r).range.size();
      if (total > kTotalityBudget)
        throw Error(ErrorCategory::non_total_equation,
                    "equation for '" + target.name + "' has too many input combinations to verify",
                    target.name);
    }
    std::vector<int> ctx(signature_.exogenous().size(), 0);
    std::vector<int> world(signature_.endogenous().size(), 0);
    std::vector<std::size_t> digit(refs.size(), 0);
    auto slot = [&](const VarRef& r) -> int& {
      return r.kind == VarKind::exogenous ? ctx[r.index] : world[r.index];
    };
    for (std::size_t k = 0; k < refs.size(); ++k) slot(refs[k]) = signature_.variable(refs[k]).range[0];
    while (true) {
      const int v = programs_[i].eval(ctx, world);
      if (!target.contains(v)) {
        std::string at;
        for (const auto& r : refs)
          at += (at.empty() ? "" : ", ") + signature_.variable(r).name + "=" + std::to_string(slot(r));
        throw Error(ErrorCategory::non_total_equation,
                    "equation for '" + target.name + "' yields " +
                        (v == kFree ? std::string("an out-of-bounds value") : std::to_string(v)) +
                        ", outside its range" + (at.empty() ? "" : ", at " + at),
                    target.name);
      }
      std::size_t k = 0;
      for (; k < refs.size(); ++k) {
        const auto& range = signature_.variable(refs[k]).range;
        if (++digit[k] < range.size()) {
          slot(refs[k]) = range[digit[k]];
          break;
        }
        digit[k] = 0;
        slot(refs[k]) = range[0];
      }
      if (k == refs.size()) break;
    }
  }

  std::string name_;
  Signature signature_;
  std::vector<Equation> equations_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::size_t> order_;
  std::vector<detail::Program> programs_;
};

inline World solve(const CausalModel& model, const Context& ctx) {
  validate_context(model.signature(), ctx);
  World w{std::vector<int>(model.endogenous_count(), 0)};
  model.solve_into(ctx.values, {}, w.values);
  return w;
}

inline World solve(const CausalModel& model, const Context& ctx, const Intervention& iv) {
  validate_context(model.signature(), ctx);
  const auto pins = bind_pins(model.signature(), iv);
  World w{std::vector<int>(model.endogenous_count(), 0)};
  model.solve_into(ctx.values, pins, w.values);
  return w;
}

/// M_{Y<-y}: each targeted equation becomes the constant it is set to.
inline CausalModel intervene(const CausalModel& model, const Intervention& iv) {
  const auto pins = bind_pins(model.signature(), iv);
  if (iv.empty()) return model;
  std::vector<Equation> eqs = model.equations();
  for (std::size_t i = 0; i < eqs.size(); ++i)
    if (pins[i] != kFree) eqs[i].body = Expr::lit(pins[i]);
  return CausalModel(model.name(), model.signature(), std::move(eqs));
}

/// Calls `f(context)` for every exogenous assignment, lexicographically by
/// declaration order (first variable most significant).
template <typename F>
void for_each_context(const Signature& sig, F&& f) {
  const auto& exo = sig.exogenous();
  Context ctx{std::vector<int>(exo.size())};
  std::vector<std::size_t> digit(exo.size(), 0);
  for (std::size_t i = 0; i < exo.size(); ++i) ctx.values[i] = exo[i].range[0];
  while (true) {
    f(static_cast<const Context&>(ctx));
    std::size_t k = exo.size();
    while (k > 0) {
      --k;
      if (++digit[k] < exo[k].range.size()) {
        ctx.values[k] = exo[k].range[digit[k]];
        break;
      }
      digit[k] = 0;
      ctx.values[k] = exo[k].range[0];
      if (k == 0) return;
    }
    if (exo.empty()) return;
  }
}

inline std::vector<Context> enumerate_contexts(const CausalModel& model) {
  std::vector<Context> out;
  for_each_context(model.signature(), [&](const Context& c) { out.push_back(c); });
  return out;
}

}  // namespace causelab

#endif  // CAUSELAB_MODEL_HPP
