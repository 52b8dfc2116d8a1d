#include "influence/evaluator.hpp"

namespace influence {

bool eval_state(const StateFormula& alpha, const State& s) {
  switch (alpha.op()) {
    case StateOp::Belief: return s.belief(alpha.agent(), alpha.issue());
    case StateOp::Visible: return s.visible(alpha.agent(), alpha.issue());
    case StateOp::True: return true;
    case StateOp::False: return false;
    case StateOp::Not: return !eval_state(alpha.lhs(), s);
    case StateOp::And: return eval_state(alpha.lhs(), s) && eval_state(alpha.rhs(), s);
    case StateOp::Or: return eval_state(alpha.lhs(), s) || eval_state(alpha.rhs(), s);
    case StateOp::Know:
      return for_each_indistinguishable(s, alpha.agent(), [&](const State& t) { return eval_state(alpha.lhs(), t); });
  }
  return false;
}

bool eval(const TemporalFormula& phi, const Lasso& lasso, std::size_t k) {
  LassoEvaluator ev(lasso);
  return ev(phi, k);
}

bool LassoEvaluator::operator()(const TemporalFormula& phi, std::size_t k) {
  return labels(phi)[lasso_.position(k)];
}

const std::vector<bool>& LassoEvaluator::labels(const TemporalFormula& phi) {
  if (auto it = cache_.find(phi); it != cache_.end()) return it->second;
  const std::size_t n = lasso_.size();
  std::vector<bool> out(n, false);

  // Least fixpoint of U[k] = b[k] | (a[k] & U[succ k]); on a lasso it settles
  // after two backward sweeps, the loop just runs until nothing changes.
  auto until_labels = [&](const std::vector<bool>& a, const std::vector<bool>& b) {
    std::vector<bool> u = b;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t k = n; k-- > 0;) {
        if (!u[k] && a[k] && u[lasso_.successor(k)]) {
          u[k] = true;
          changed = true;
        }
      }
    }
    return u;
  };

  switch (phi.op()) {
    case TemporalOp::State:
      for (std::size_t k = 0; k < n; ++k) out[k] = eval_state(phi.state(), lasso_.states[k]);
      break;
    case TemporalOp::Not: {
      const auto a = labels(phi.lhs());
      for (std::size_t k = 0; k < n; ++k) out[k] = !a[k];
      break;
    }
    case TemporalOp::And:
    case TemporalOp::Or:
    case TemporalOp::Implies: {
      const auto a = labels(phi.lhs());
      const auto b = labels(phi.rhs());
      for (std::size_t k = 0; k < n; ++k) {
        if (phi.op() == TemporalOp::And) out[k] = a[k] && b[k];
        if (phi.op() == TemporalOp::Or) out[k] = a[k] || b[k];
        if (phi.op() == TemporalOp::Implies) out[k] = !a[k] || b[k];
      }
      break;
    }
    case TemporalOp::Next: {
      const auto a = labels(phi.lhs());
      for (std::size_t k = 0; k < n; ++k) out[k] = a[lasso_.successor(k)];
      break;
    }
    case TemporalOp::Until: out = until_labels(labels(phi.lhs()), labels(phi.rhs())); break;
    case TemporalOp::Eventually: out = until_labels(std::vector<bool>(n, true), labels(phi.lhs())); break;
    case TemporalOp::Henceforth: {
      // G a = !F !a
      std::vector<bool> not_a = labels(phi.lhs());
      not_a.flip();
      out = until_labels(std::vector<bool>(n, true), not_a);
      out.flip();
      break;
    }
  }
  return cache_.emplace(phi, std::move(out)).first->second;
}

TemporalFormula progress(const TemporalFormula& phi, const State& s) {
  switch (phi.op()) {
    case TemporalOp::State: return lift(state_constant(eval_state(phi.state(), s)));
    case TemporalOp::Not: return folded_not(progress(phi.lhs(), s));
    case TemporalOp::And: {
      TemporalFormula a = progress(phi.lhs(), s);
      if (is_false(a)) return a;
      return folded_and(a, progress(phi.rhs(), s));
    }
    case TemporalOp::Or: {
      TemporalFormula a = progress(phi.lhs(), s);
      if (is_true(a)) return a;
      return folded_or(a, progress(phi.rhs(), s));
    }
    case TemporalOp::Implies: {
      TemporalFormula a = progress(phi.lhs(), s);
      if (is_false(a)) return lift(state_constant(true));
      return folded_or(folded_not(a), progress(phi.rhs(), s));
    }
    case TemporalOp::Next: return phi.lhs();
    case TemporalOp::Until: {
      TemporalFormula b = progress(phi.rhs(), s);
      if (is_true(b)) return b;
      return folded_or(b, folded_and(progress(phi.lhs(), s), phi));
    }
    case TemporalOp::Eventually: {
      TemporalFormula a = progress(phi.lhs(), s);
      if (is_true(a)) return a;
      return folded_or(a, phi);
    }
    case TemporalOp::Henceforth: {
      TemporalFormula a = progress(phi.lhs(), s);
      if (is_false(a)) return a;
      return folded_and(a, phi);
    }
  }
  return phi;
}

}  // namespace influence
