#include "influence/reduction.hpp"

#include <set>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace influence {

namespace {

StateFormula nnf_signed(const StateFormula& a, bool negate) {
  switch (a.op()) {
    case StateOp::Belief:
    case StateOp::Visible: return negate ? negation(a) : a;
    case StateOp::True: return state_constant(!negate);
    case StateOp::False: return state_constant(negate);
    case StateOp::Not: return nnf_signed(a.lhs(), !negate);
    case StateOp::And:
    case StateOp::Or: {
      const StateFormula l = nnf_signed(a.lhs(), negate);
      const StateFormula r = nnf_signed(a.rhs(), negate);
      const bool conj = (a.op() == StateOp::And) != negate;
      return conj ? folded_and(l, r) : folded_or(l, r);
    }
    case StateOp::Know: break;
  }
  throw std::invalid_argument("nnf: formula contains a knowledge operator");
}

using Cell = std::pair<std::uint32_t, std::uint32_t>;

// Belief atoms of agents other than i: the only atoms whose value can vary
// across i's indistinguishability class.
void uncertain_atoms(const StateFormula& a, AgentId i, std::set<Cell>& out) {
  switch (a.op()) {
    case StateOp::Belief:
      if (a.agent() != i) out.emplace(a.agent().value, a.issue().value);
      return;
    case StateOp::Not:
    case StateOp::Know: uncertain_atoms(a.lhs(), i, out); return;
    case StateOp::And:
    case StateOp::Or:
      uncertain_atoms(a.lhs(), i, out);
      uncertain_atoms(a.rhs(), i, out);
      return;
    default: return;
  }
}

StateFormula substitute(const StateFormula& a, Cell cell, bool value) {
  switch (a.op()) {
    case StateOp::Belief:
      return a.agent().value == cell.first && a.issue().value == cell.second ? state_constant(value) : a;
    case StateOp::Not: return folded_not(substitute(a.lhs(), cell, value));
    case StateOp::And: return folded_and(substitute(a.lhs(), cell, value), substitute(a.rhs(), cell, value));
    case StateOp::Or: return folded_or(substitute(a.lhs(), cell, value), substitute(a.rhs(), cell, value));
    default: return a;
  }
}

// K_i over an epistemic-free NNF formula.
class KnowReducer {
 public:
  explicit KnowReducer(AgentId i) : i_(i) {}

  StateFormula operator()(const StateFormula& a) {
    if (auto it = memo_.find(a); it != memo_.end()) return it->second;
    StateFormula out = compute(a);
    memo_.emplace(a, out);
    return out;
  }

 private:
  StateFormula literal(const StateFormula& atom, bool positive) {
    const StateFormula lit = positive ? atom : negation(atom);
    if (atom.op() == StateOp::Visible || atom.agent() == i_) return lit;
    return conjunction(lit, visibility_atom(atom.agent(), atom.issue()));
  }

  StateFormula compute(const StateFormula& a) {
    switch (a.op()) {
      case StateOp::True:
      case StateOp::False: return a;
      case StateOp::Belief:
      case StateOp::Visible: return literal(a, true);
      case StateOp::Not: return literal(a.lhs(), false);
      case StateOp::And: return folded_and((*this)(a.lhs()), (*this)(a.rhs()));
      case StateOp::Or: {
        std::set<Cell> left, right;
        uncertain_atoms(a.lhs(), i_, left);
        uncertain_atoms(a.rhs(), i_, right);
        for (const Cell& c : left) {
          if (right.count(c)) return split(a, c);
        }
        return folded_or((*this)(a.lhs()), (*this)(a.rhs()));
      }
      case StateOp::Know: break;
    }
    throw std::logic_error("K reduction reached a nested K");
  }

  StateFormula split(const StateFormula& a, Cell c) {
    const StateFormula k1 = (*this)(substitute(a, c, true));
    const StateFormula k0 = (*this)(substitute(a, c, false));
    const AgentId j{c.first};
    const IssueId p{c.second};
    const StateFormula v = visibility_atom(j, p);
    const StateFormula b = belief_atom(j, p);
    const StateFormula seen_true = folded_and(folded_and(v, b), k1);
    const StateFormula seen_false = folded_and(folded_and(v, negation(b)), k0);
    return folded_or(folded_or(folded_and(k1, k0), seen_true), seen_false);
  }

  AgentId i_;
  std::unordered_map<StateFormula, StateFormula> memo_;
};

}  // namespace

StateFormula nnf(const StateFormula& alpha) { return nnf_signed(alpha, false); }

bool is_epistemic_literal(const StateFormula& alpha) {
  const StateFormula& k = alpha.op() == StateOp::Not ? alpha.lhs() : alpha;
  if (k.op() != StateOp::Know) return false;
  const StateFormula& l = k.lhs().op() == StateOp::Not ? k.lhs().lhs() : k.lhs();
  return l.op() == StateOp::Belief || l.op() == StateOp::Visible;
}

StateFormula collapse_nesting(const StateFormula& alpha) {
  switch (alpha.op()) {
    case StateOp::Not: return negation(collapse_nesting(alpha.lhs()));
    case StateOp::And: return conjunction(collapse_nesting(alpha.lhs()), collapse_nesting(alpha.rhs()));
    case StateOp::Or: return disjunction(collapse_nesting(alpha.lhs()), collapse_nesting(alpha.rhs()));
    case StateOp::Know: {
      const StateFormula inner = collapse_nesting(alpha.lhs());
      const AgentId i = alpha.agent();
      if (inner.op() == StateOp::Know && inner.agent() == i) return inner;
      if (inner.op() == StateOp::Know && inner.lhs().op() == StateOp::Know && inner.lhs().agent() == i)
        return inner;
      return knows(i, inner);
    }
    default: return alpha;
  }
}

namespace {

StateFormula reduce_collapsed(const StateFormula& alpha) {
  switch (alpha.op()) {
    case StateOp::Not: return folded_not(reduce_collapsed(alpha.lhs()));
    case StateOp::And: return folded_and(reduce_collapsed(alpha.lhs()), reduce_collapsed(alpha.rhs()));
    case StateOp::Or: return folded_or(reduce_collapsed(alpha.lhs()), reduce_collapsed(alpha.rhs()));
    case StateOp::Know: return KnowReducer(alpha.agent())(nnf(reduce_collapsed(alpha.lhs())));
    default: return alpha;
  }
}

}  // namespace

StateFormula reduce_state(const StateFormula& alpha) {
  if (!alpha.has_knowledge()) return alpha;
  return reduce_collapsed(collapse_nesting(alpha));
}

TemporalFormula reduce(const TemporalFormula& phi) {
  if (!phi.has_knowledge()) return phi;
  switch (phi.op()) {
    case TemporalOp::State: return lift(reduce_state(phi.state()));
    case TemporalOp::Not: return negation(reduce(phi.lhs()));
    case TemporalOp::And: return conjunction(reduce(phi.lhs()), reduce(phi.rhs()));
    case TemporalOp::Or: return disjunction(reduce(phi.lhs()), reduce(phi.rhs()));
    case TemporalOp::Implies: return implies(reduce(phi.lhs()), reduce(phi.rhs()));
    case TemporalOp::Next: return next(reduce(phi.lhs()));
    case TemporalOp::Until: return until(reduce(phi.lhs()), reduce(phi.rhs()));
    case TemporalOp::Eventually: return eventually(reduce(phi.lhs()));
    case TemporalOp::Henceforth: return henceforth(reduce(phi.lhs()));
  }
  return phi;
}

}  // namespace influence
