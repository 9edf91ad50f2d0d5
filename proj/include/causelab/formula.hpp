#ifndef CAUSELAB_FORMULA_HPP
#define CAUSELAB_FORMULA_HPP

#include <memory>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "causelab/model.hpp"

namespace causelab {

/// `X = x` over an endogenous variable.
using PrimitiveEvent = Setting;

/// Boolean combination of primitive events. Binary connectives only;
/// n-ary surface forms are right-folded by the parser.
class EventFormula {
 public:
  enum class Kind { event, conjunction, disjunction, negation };

  static EventFormula atom(std::string variable, int value) {
    return EventFormula(std::make_shared<const Node>(
        Node{Kind::event, PrimitiveEvent{std::move(variable), value}, nullptr, nullptr}));
  }
  static EventFormula atom(PrimitiveEvent e) { return atom(std::move(e.variable), e.value); }

  static EventFormula conjunction(EventFormula a, EventFormula b) {
    return EventFormula(
        std::make_shared<const Node>(Node{Kind::conjunction, {}, std::move(a.node_), std::move(b.node_)}));
  }
  static EventFormula disjunction(EventFormula a, EventFormula b) {
    return EventFormula(
        std::make_shared<const Node>(Node{Kind::disjunction, {}, std::move(a.node_), std::move(b.node_)}));
  }
  static EventFormula negation(EventFormula a) {
    return EventFormula(
        std::make_shared<const Node>(Node{Kind::negation, {}, std::move(a.node_), nullptr}));
  }

  /// Right-folded conjunction of the given events; requires a nonempty list.
  static EventFormula all_of(std::span<const PrimitiveEvent> events) {
    if (events.empty()) throw Error(ErrorCategory::syntax, "empty conjunction");
    EventFormula f = atom(events.back());
    for (std::size_t i = events.size() - 1; i-- > 0;) f = conjunction(atom(events[i]), std::move(f));
    return f;
  }

  Kind kind() const { return node_->kind; }
  const PrimitiveEvent& event() const { return node_->event; }
  EventFormula lhs() const { return EventFormula(node_->lhs); }
  EventFormula rhs() const { return EventFormula(node_->rhs); }
  EventFormula operand() const { return EventFormula(node_->lhs); }

  /// Names of every variable appearing in a leaf.
  std::set<std::string> variables() const {
    std::set<std::string> out;
    collect(out);
    return out;
  }

  bool operator==(const EventFormula& o) const {
    if (node_ == o.node_) return true;
    if (kind() != o.kind()) return false;
    switch (kind()) {
      case Kind::event: return event() == o.event();
      case Kind::negation: return operand() == o.operand();
      default: return lhs() == o.lhs() && rhs() == o.rhs();
    }
  }

  friend EventFormula operator&&(EventFormula a, EventFormula b) {
    return conjunction(std::move(a), std::move(b));
  }
  friend EventFormula operator||(EventFormula a, EventFormula b) {
    return disjunction(std::move(a), std::move(b));
  }
  friend EventFormula operator!(EventFormula a) { return negation(std::move(a)); }

 private:
  struct Node {
    Kind kind;
    PrimitiveEvent event;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  explicit EventFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  void collect(std::set<std::string>& out) const {
    if (kind() == Kind::event) {
      out.insert(event().variable);
      return;
    }
    lhs().collect(out);
    if (kind() != Kind::negation) rhs().collect(out);
  }

  std::shared_ptr<const Node> node_;
};

inline EventFormula event(std::string variable, int value) {
  return EventFormula::atom(std::move(variable), value);
}

/// `[Y1<-y1, ..., Yk<-yk] phi`; an empty prefix is the plain event formula.
struct CausalFormula {
  Intervention prefix;
  EventFormula matrix;

  CausalFormula(EventFormula m) : matrix(std::move(m)) {}  // NOLINT: implicit by design
  CausalFormula(Intervention p, EventFormula m) : prefix(std::move(p)), matrix(std::move(m)) {}

  bool operator==(const CausalFormula&) const = default;
};

/// An event formula resolved against one signature; evaluates on dense worlds.
class BoundFormula {
 public:
  BoundFormula() = default;

  BoundFormula(const EventFormula& f, const Signature& sig) { emit(f, sig); }

  bool eval(std::span<const int> world) const {
    bool stack[64];
    if (code_.size() > 64) return eval_slow(world);
    std::size_t sp = 0;
    for (const auto& in : code_) {
      switch (in.op) {
        case Op::test: stack[sp++] = world[in.var] == in.value; break;
        case Op::conj: --sp; stack[sp - 1] = stack[sp - 1] && stack[sp]; break;
        case Op::disj: --sp; stack[sp - 1] = stack[sp - 1] || stack[sp]; break;
        case Op::neg: stack[sp - 1] = !stack[sp - 1]; break;
      }
    }
    return stack[0];
  }

 private:
  enum class Op : std::uint8_t { test, conj, disj, neg };
  struct Instr {
    Op op;
    std::size_t var;
    int value;
  };

  bool eval_slow(std::span<const int> world) const {
    std::vector<bool> stack;
    for (const auto& in : code_) {
      switch (in.op) {
        case Op::test: stack.push_back(world[in.var] == in.value); break;
        case Op::conj: {
          bool b = stack.back();
          stack.pop_back();
          stack.back() = stack.back() && b;
          break;
        }
        case Op::disj: {
          bool b = stack.back();
          stack.pop_back();
          stack.back() = stack.back() || b;
          break;
        }
        case Op::neg: stack.back() = !stack.back(); break;
      }
    }
    return stack.back();
  }

  void emit(const EventFormula& f, const Signature& sig) {
    using K = EventFormula::Kind;
    switch (f.kind()) {
      case K::event: code_.push_back({Op::test, sig.bind_setting(f.event()), f.event().value}); return;
      case K::negation:
        emit(f.operand(), sig);
        code_.push_back({Op::neg, 0, 0});
        return;
      case K::conjunction:
      case K::disjunction:
        emit(f.lhs(), sig);
        emit(f.rhs(), sig);
        code_.push_back({f.kind() == K::conjunction ? Op::conj : Op::disj, 0, 0});
        return;
    }
  }

  std::vector<Instr> code_;
};

inline bool holds(const World& world, const Signature& sig, const EventFormula& f) {
  return BoundFormula(f, sig).eval(world.values);
}

/// (M, u) |= [prefix] matrix.
inline bool holds(const CausalModel& model, const Context& ctx, const CausalFormula& f) {
  BoundFormula bound(f.matrix, model.signature());
  return bound.eval(solve(model, ctx, f.prefix).values);
}

/// M |= f: holds in every context.
inline bool valid(const CausalModel& model, const CausalFormula& f) {
  BoundFormula bound(f.matrix, model.signature());
  const auto pins = bind_pins(model.signature(), f.prefix);
  std::vector<int> world(model.endogenous_count());
  bool ok = true;
  for_each_context(model.signature(), [&](const Context& c) {
    if (!ok) return;
    model.solve_into(c.values, pins, world);
    ok = bound.eval(world);
  });
  return ok;
}

}  // namespace causelab

#endif  // CAUSELAB_FORMULA_HPP
