#ifndef INFLUENCE_FORMULA_HPP
#define INFLUENCE_FORMULA_HPP

#include <cstddef>
#include <memory>
#include <string>

#include "influence/core_model.hpp"

namespace influence {

enum class StateOp : std::uint8_t { Belief, Visible, True, False, Not, And, Or, Know };

/// Immutable state-layer formula: belief/visibility atoms, booleans and K_i.
/// No temporal operator can occur inside. Nodes are shared.
class StateFormula {
 public:
  StateFormula();  // true

  StateOp op() const;
  AgentId agent() const;  ///< atoms and Know
  IssueId issue() const;  ///< atoms
  const StateFormula& lhs() const;  ///< Not / Know operand, first And / Or operand
  const StateFormula& rhs() const;  ///< second And / Or operand

  std::size_t size() const;
  std::size_t hash() const;
  bool has_knowledge() const;

  friend bool operator==(const StateFormula& a, const StateFormula& b);

 private:
  struct Node;
  explicit StateFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static StateFormula make(StateOp op, AgentId agent, IssueId issue, const StateFormula* a, const StateFormula* b);

  std::shared_ptr<const Node> node_;

  friend StateFormula belief_atom(AgentId, IssueId);
  friend StateFormula visibility_atom(AgentId, IssueId);
  friend StateFormula state_constant(bool);
  friend StateFormula negation(const StateFormula&);
  friend StateFormula conjunction(const StateFormula&, const StateFormula&);
  friend StateFormula disjunction(const StateFormula&, const StateFormula&);
  friend StateFormula knows(AgentId, const StateFormula&);
};

StateFormula belief_atom(AgentId i, IssueId p);
StateFormula visibility_atom(AgentId i, IssueId p);
StateFormula state_constant(bool value);
StateFormula negation(const StateFormula& a);
StateFormula conjunction(const StateFormula& a, const StateFormula& b);
StateFormula disjunction(const StateFormula& a, const StateFormula& b);
StateFormula knows(AgentId i, const StateFormula& a);

enum class TemporalOp : std::uint8_t { State, Not, And, Or, Implies, Next, Until, Eventually, Henceforth };

/// Immutable temporal-layer formula over lifted state formulas.
///
/// Construction keeps a canonical shape: Not/And/Or whose operands are all
/// lifted state formulas collapse into a single lifted state formula, so
/// every maximal temporal-free subterm (other than an implication) is one
/// State node. Implication always lives on the temporal layer.
class TemporalFormula {
 public:
  TemporalFormula();  // lifted true

  TemporalOp op() const;
  const StateFormula& state() const;  ///< State nodes
  const TemporalFormula& lhs() const;  ///< unary operand, or first binary operand
  const TemporalFormula& rhs() const;  ///< second binary operand

  bool is_state() const { return op() == TemporalOp::State; }
  std::size_t size() const;
  std::size_t hash() const;
  bool has_knowledge() const;
  /// Nesting depth of X, U, F, G.
  std::size_t temporal_depth() const;

  friend bool operator==(const TemporalFormula& a, const TemporalFormula& b);

 private:
  struct Node;
  explicit TemporalFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static TemporalFormula make(TemporalOp op, const StateFormula* s, const TemporalFormula* a, const TemporalFormula* b);

  std::shared_ptr<const Node> node_;

  friend TemporalFormula lift(const StateFormula&);
  friend TemporalFormula negation(const TemporalFormula&);
  friend TemporalFormula conjunction(const TemporalFormula&, const TemporalFormula&);
  friend TemporalFormula disjunction(const TemporalFormula&, const TemporalFormula&);
  friend TemporalFormula implies(const TemporalFormula&, const TemporalFormula&);
  friend TemporalFormula next(const TemporalFormula&);
  friend TemporalFormula until(const TemporalFormula&, const TemporalFormula&);
  friend TemporalFormula eventually(const TemporalFormula&);
  friend TemporalFormula henceforth(const TemporalFormula&);
};

TemporalFormula lift(const StateFormula& a);
TemporalFormula negation(const TemporalFormula& a);
TemporalFormula conjunction(const TemporalFormula& a, const TemporalFormula& b);
TemporalFormula disjunction(const TemporalFormula& a, const TemporalFormula& b);
TemporalFormula implies(const TemporalFormula& a, const TemporalFormula& b);
TemporalFormula next(const TemporalFormula& a);
TemporalFormula until(const TemporalFormula& a, const TemporalFormula& b);
TemporalFormula eventually(const TemporalFormula& a);
TemporalFormula henceforth(const TemporalFormula& a);

/// Constant-folding variants used by rewriting passes. They never change the
/// meaning, only drop true/false operands.
StateFormula folded_not(const StateFormula& a);
StateFormula folded_and(const StateFormula& a, const StateFormula& b);
StateFormula folded_or(const StateFormula& a, const StateFormula& b);
TemporalFormula folded_not(const TemporalFormula& a);
TemporalFormula folded_and(const TemporalFormula& a, const TemporalFormula& b);
TemporalFormula folded_or(const TemporalFormula& a, const TemporalFormula& b);

bool is_true(const TemporalFormula& f);
bool is_false(const TemporalFormula& f);

/// Concrete syntax: `B[a,p]`, `V[a,p]`, `true`, `false`, `!`, `&`, `|`, `->`,
/// `K[a]`, `X`, `U`, `F`, `G`. Parenthesises only where precedence demands.
std::string to_string(const StateFormula& f, const Vocabulary& vocab);
std::string to_string(const TemporalFormula& f, const Vocabulary& vocab);

/// Atom renderer used to print the same tree in another syntax.
struct AtomPrinter {
  virtual ~AtomPrinter() = default;
  virtual std::string belief(AgentId i, IssueId p) const = 0;
  virtual std::string visible(AgentId i, IssueId p) const = 0;
  virtual std::string knows_prefix(AgentId i) const = 0;
};
std::string to_string(const TemporalFormula& f, const AtomPrinter& atoms);

}  // namespace influence

template <>
struct std::hash<influence::TemporalFormula> {
  std::size_t operator()(const influence::TemporalFormula& f) const noexcept { return f.hash(); }
};
template <>
struct std::hash<influence::StateFormula> {
  std::size_t operator()(const influence::StateFormula& f) const noexcept { return f.hash(); }
};

#endif  // INFLUENCE_FORMULA_HPP
