#include "influence/formula.hpp"

#include <algorithm>

namespace influence {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

// ---------------------------------------------------------------------------
// State layer

struct StateFormula::Node {
  StateOp op = StateOp::True;
  AgentId agent{};
  IssueId issue{};
  StateFormula a;
  StateFormula b;
  std::size_t size = 1;
  std::size_t hash = 0;
  bool has_k = false;
};

namespace {
const StateFormula& empty_state() {
  static const StateFormula f;
  return f;
}
}  // namespace

StateFormula::StateFormula() = default;

StateOp StateFormula::op() const { return node_ ? node_->op : StateOp::True; }
AgentId StateFormula::agent() const { return node_ ? node_->agent : AgentId{}; }
IssueId StateFormula::issue() const { return node_ ? node_->issue : IssueId{}; }
const StateFormula& StateFormula::lhs() const { return node_ ? node_->a : empty_state(); }
const StateFormula& StateFormula::rhs() const { return node_ ? node_->b : empty_state(); }
std::size_t StateFormula::size() const { return node_ ? node_->size : 1; }
std::size_t StateFormula::hash() const { return node_ ? node_->hash : mix(0, static_cast<std::size_t>(StateOp::True)); }
bool StateFormula::has_knowledge() const { return node_ && node_->has_k; }

StateFormula StateFormula::make(StateOp op, AgentId agent, IssueId issue, const StateFormula* a,
                                const StateFormula* b) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->agent = agent;
  node->issue = issue;
  std::size_t h = mix(0, static_cast<std::size_t>(op));
  h = mix(h, agent.value);
  h = mix(h, issue.value);
  node->has_k = op == StateOp::Know;
  if (a) {
    node->a = *a;
    node->size += a->size();
    node->has_k |= a->has_knowledge();
    h = mix(h, a->hash());
  }
  if (b) {
    node->b = *b;
    node->size += b->size();
    node->has_k |= b->has_knowledge();
    h = mix(h, b->hash());
  }
  node->hash = h;
  return StateFormula(std::move(node));
}

bool operator==(const StateFormula& x, const StateFormula& y) {
  if (x.node_ == y.node_) return true;
  if (x.hash() != y.hash() || x.op() != y.op()) return false;
  switch (x.op()) {
    case StateOp::Belief:
    case StateOp::Visible: return x.agent() == y.agent() && x.issue() == y.issue();
    case StateOp::True:
    case StateOp::False: return true;
    case StateOp::Not: return x.lhs() == y.lhs();
    case StateOp::Know: return x.agent() == y.agent() && x.lhs() == y.lhs();
    case StateOp::And:
    case StateOp::Or: return x.lhs() == y.lhs() && x.rhs() == y.rhs();
  }
  return false;
}

StateFormula belief_atom(AgentId i, IssueId p) { return StateFormula::make(StateOp::Belief, i, p, nullptr, nullptr); }
StateFormula visibility_atom(AgentId i, IssueId p) {
  return StateFormula::make(StateOp::Visible, i, p, nullptr, nullptr);
}
StateFormula state_constant(bool value) {
  return StateFormula::make(value ? StateOp::True : StateOp::False, {}, {}, nullptr, nullptr);
}
StateFormula negation(const StateFormula& a) { return StateFormula::make(StateOp::Not, {}, {}, &a, nullptr); }
StateFormula conjunction(const StateFormula& a, const StateFormula& b) {
  return StateFormula::make(StateOp::And, {}, {}, &a, &b);
}
StateFormula disjunction(const StateFormula& a, const StateFormula& b) {
  return StateFormula::make(StateOp::Or, {}, {}, &a, &b);
}
StateFormula knows(AgentId i, const StateFormula& a) { return StateFormula::make(StateOp::Know, i, {}, &a, nullptr); }

StateFormula folded_not(const StateFormula& a) {
  switch (a.op()) {
    case StateOp::True: return state_constant(false);
    case StateOp::False: return state_constant(true);
    case StateOp::Not: return a.lhs();
    default: return negation(a);
  }
}

StateFormula folded_and(const StateFormula& a, const StateFormula& b) {
  if (a.op() == StateOp::False || b.op() == StateOp::False) return state_constant(false);
  if (a.op() == StateOp::True) return b;
  if (b.op() == StateOp::True) return a;
  if (a == b) return a;
  return conjunction(a, b);
}

StateFormula folded_or(const StateFormula& a, const StateFormula& b) {
  if (a.op() == StateOp::True || b.op() == StateOp::True) return state_constant(true);
  if (a.op() == StateOp::False) return b;
  if (b.op() == StateOp::False) return a;
  if (a == b) return a;
  return disjunction(a, b);
}

// ---------------------------------------------------------------------------
// Temporal layer

struct TemporalFormula::Node {
  TemporalOp op = TemporalOp::State;
  StateFormula state;
  TemporalFormula a;
  TemporalFormula b;
  std::size_t size = 1;
  std::size_t hash = 0;
  std::size_t depth = 0;
  bool has_k = false;
};

namespace {
const TemporalFormula& empty_temporal() {
  static const TemporalFormula f;
  return f;
}
}  // namespace

TemporalFormula::TemporalFormula() = default;

TemporalOp TemporalFormula::op() const { return node_ ? node_->op : TemporalOp::State; }
const StateFormula& TemporalFormula::state() const { return node_ ? node_->state : empty_state(); }
const TemporalFormula& TemporalFormula::lhs() const { return node_ ? node_->a : empty_temporal(); }
const TemporalFormula& TemporalFormula::rhs() const { return node_ ? node_->b : empty_temporal(); }
std::size_t TemporalFormula::size() const { return node_ ? node_->size : 1; }
std::size_t TemporalFormula::hash() const {
  return node_ ? node_->hash : mix(mix(0, static_cast<std::size_t>(TemporalOp::State)), StateFormula().hash());
}
bool TemporalFormula::has_knowledge() const { return node_ && node_->has_k; }
std::size_t TemporalFormula::temporal_depth() const { return node_ ? node_->depth : 0; }

TemporalFormula TemporalFormula::make(TemporalOp op, const StateFormula* s, const TemporalFormula* a,
                                      const TemporalFormula* b) {
  auto node = std::make_shared<Node>();
  node->op = op;
  std::size_t h = mix(0, static_cast<std::size_t>(op));
  if (s) {
    node->state = *s;
    node->size = s->size();
    node->has_k = s->has_knowledge();
    h = mix(h, s->hash());
  }
  std::size_t child_depth = 0;
  if (a) {
    node->a = *a;
    node->size += a->size();
    node->has_k |= a->has_knowledge();
    child_depth = a->temporal_depth();
    h = mix(h, a->hash());
  }
  if (b) {
    node->b = *b;
    node->size += b->size();
    node->has_k |= b->has_knowledge();
    child_depth = std::max(child_depth, b->temporal_depth());
    h = mix(h, b->hash());
  }
  const bool temporal = op == TemporalOp::Next || op == TemporalOp::Until || op == TemporalOp::Eventually ||
                        op == TemporalOp::Henceforth;
  node->depth = child_depth + (temporal ? 1 : 0);
  node->hash = h;
  return TemporalFormula(std::move(node));
}

bool operator==(const TemporalFormula& x, const TemporalFormula& y) {
  if (x.node_ == y.node_) return true;
  if (x.hash() != y.hash() || x.op() != y.op()) return false;
  switch (x.op()) {
    case TemporalOp::State: return x.state() == y.state();
    case TemporalOp::Not:
    case TemporalOp::Next:
    case TemporalOp::Eventually:
    case TemporalOp::Henceforth: return x.lhs() == y.lhs();
    case TemporalOp::And:
    case TemporalOp::Or:
    case TemporalOp::Implies:
    case TemporalOp::Until: return x.lhs() == y.lhs() && x.rhs() == y.rhs();
  }
  return false;
}

TemporalFormula lift(const StateFormula& a) { return TemporalFormula::make(TemporalOp::State, &a, nullptr, nullptr); }

TemporalFormula negation(const TemporalFormula& a) {
  if (a.is_state()) return lift(negation(a.state()));
  return TemporalFormula::make(TemporalOp::Not, nullptr, &a, nullptr);
}

TemporalFormula conjunction(const TemporalFormula& a, const TemporalFormula& b) {
  if (a.is_state() && b.is_state()) return lift(conjunction(a.state(), b.state()));
  return TemporalFormula::make(TemporalOp::And, nullptr, &a, &b);
}

TemporalFormula disjunction(const TemporalFormula& a, const TemporalFormula& b) {
  if (a.is_state() && b.is_state()) return lift(disjunction(a.state(), b.state()));
  return TemporalFormula::make(TemporalOp::Or, nullptr, &a, &b);
}

TemporalFormula implies(const TemporalFormula& a, const TemporalFormula& b) {
  return TemporalFormula::make(TemporalOp::Implies, nullptr, &a, &b);
}
TemporalFormula next(const TemporalFormula& a) { return TemporalFormula::make(TemporalOp::Next, nullptr, &a, nullptr); }
TemporalFormula until(const TemporalFormula& a, const TemporalFormula& b) {
  return TemporalFormula::make(TemporalOp::Until, nullptr, &a, &b);
}
TemporalFormula eventually(const TemporalFormula& a) {
  return TemporalFormula::make(TemporalOp::Eventually, nullptr, &a, nullptr);
}
TemporalFormula henceforth(const TemporalFormula& a) {
  return TemporalFormula::make(TemporalOp::Henceforth, nullptr, &a, nullptr);
}

bool is_true(const TemporalFormula& f) { return f.is_state() && f.state().op() == StateOp::True; }
bool is_false(const TemporalFormula& f) { return f.is_state() && f.state().op() == StateOp::False; }

TemporalFormula folded_not(const TemporalFormula& a) {
  if (a.is_state()) return lift(folded_not(a.state()));
  if (a.op() == TemporalOp::Not) return a.lhs();
  return negation(a);
}

TemporalFormula folded_and(const TemporalFormula& a, const TemporalFormula& b) {
  if (is_false(a) || is_false(b)) return lift(state_constant(false));
  if (is_true(a)) return b;
  if (is_true(b)) return a;
  if (a == b) return a;
  if (a.is_state() && b.is_state()) return lift(folded_and(a.state(), b.state()));
  return conjunction(a, b);
}

TemporalFormula folded_or(const TemporalFormula& a, const TemporalFormula& b) {
  if (is_true(a) || is_true(b)) return lift(state_constant(true));
  if (is_false(a)) return b;
  if (is_false(b)) return a;
  if (a == b) return a;
  if (a.is_state() && b.is_state()) return lift(folded_or(a.state(), b.state()));
  return disjunction(a, b);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Binding strength; larger binds tighter.
constexpr int kImplies = 1;
constexpr int kOr = 2;
constexpr int kAnd = 3;
constexpr int kUntil = 4;
constexpr int kUnary = 5;
constexpr int kAtom = 6;

struct Printed {
  std::string text;
  int level;
};

std::string wrap(const Printed& p, int min_level) { return p.level < min_level ? "(" + p.text + ")" : p.text; }

class NativeAtoms final : public AtomPrinter {
 public:
  explicit NativeAtoms(const Vocabulary& vocab) : vocab_(vocab) {}
  std::string belief(AgentId i, IssueId p) const override {
    return "B[" + vocab_.agent_name(i) + "," + vocab_.issue_name(p) + "]";
  }
  std::string visible(AgentId i, IssueId p) const override {
    return "V[" + vocab_.agent_name(i) + "," + vocab_.issue_name(p) + "]";
  }
  std::string knows_prefix(AgentId i) const override { return "K[" + vocab_.agent_name(i) + "]"; }

 private:
  const Vocabulary& vocab_;
};

Printed print_state(const StateFormula& f, const AtomPrinter& atoms) {
  switch (f.op()) {
    case StateOp::Belief: return {atoms.belief(f.agent(), f.issue()), kAtom};
    case StateOp::Visible: return {atoms.visible(f.agent(), f.issue()), kAtom};
    case StateOp::True: return {"true", kAtom};
    case StateOp::False: return {"false", kAtom};
    case StateOp::Not: return {"!" + wrap(print_state(f.lhs(), atoms), kUnary), kUnary};
    case StateOp::Know: return {atoms.knows_prefix(f.agent()) + " " + wrap(print_state(f.lhs(), atoms), kUnary), kUnary};
    case StateOp::And:
      return {wrap(print_state(f.lhs(), atoms), kAnd) + " & " + wrap(print_state(f.rhs(), atoms), kAnd + 1), kAnd};
    case StateOp::Or:
      return {wrap(print_state(f.lhs(), atoms), kOr) + " | " + wrap(print_state(f.rhs(), atoms), kOr + 1), kOr};
  }
  return {"true", kAtom};
}

Printed print_temporal(const TemporalFormula& f, const AtomPrinter& atoms) {
  auto unary = [&](const char* op) {
    return Printed{std::string(op) + " " + wrap(print_temporal(f.lhs(), atoms), kUnary), kUnary};
  };
  auto binary = [&](const char* op, int level, int left_min, int right_min) {
    return Printed{wrap(print_temporal(f.lhs(), atoms), left_min) + " " + op + " " +
                       wrap(print_temporal(f.rhs(), atoms), right_min),
                   level};
  };
  switch (f.op()) {
    case TemporalOp::State: return print_state(f.state(), atoms);
    case TemporalOp::Not: return {"!" + wrap(print_temporal(f.lhs(), atoms), kUnary), kUnary};
    case TemporalOp::Next: return unary("X");
    case TemporalOp::Eventually: return unary("F");
    case TemporalOp::Henceforth: return unary("G");
    case TemporalOp::And: return binary("&", kAnd, kAnd, kAnd + 1);
    case TemporalOp::Or: return binary("|", kOr, kOr, kOr + 1);
    case TemporalOp::Until: return binary("U", kUntil, kUntil, kUntil + 1);
    case TemporalOp::Implies: return binary("->", kImplies, kImplies + 1, kImplies);
  }
  return {"true", kAtom};
}

}  // namespace

std::string to_string(const StateFormula& f, const Vocabulary& vocab) {
  return print_state(f, NativeAtoms(vocab)).text;
}

std::string to_string(const TemporalFormula& f, const Vocabulary& vocab) {
  return print_temporal(f, NativeAtoms(vocab)).text;
}

std::string to_string(const TemporalFormula& f, const AtomPrinter& atoms) { return print_temporal(f, atoms).text; }

}  // namespace influence
