#ifndef INFLUENCE_REDUCTION_HPP
#define INFLUENCE_REDUCTION_HPP

#include "influence/formula.hpp"

namespace influence {

/// Negation normal form of an epistemic-free state formula: negations only
/// on atoms, constants folded. Throws std::invalid_argument on a K node.
StateFormula nnf(const StateFormula& alpha);

/// (!)K_i l with l a belief or visibility literal.
bool is_epistemic_literal(const StateFormula& alpha);

/// Equivalent state formula without K.
///
/// Inner K's are removed first, so every K that is reduced scopes over an
/// epistemic-free formula in NNF. K distributes over conjunction. Over a
/// disjunction it distributes only when the disjuncts share no belief atom
/// that the knower may be unable to see (B_j p, j != i); otherwise the
/// shared atom x = B_j p is split on:
///
///   K a  <->  (K a[x:=1] & K a[x:=0])
///           | (V_j p &  B_j p & K a[x:=1])
///           | (V_j p & !B_j p & K a[x:=0])
///
/// Literals are then rewritten: K B_i p -> B_i p, K (!)B_j p -> (!)B_j p &
/// V_j p, K (!)V_j p -> (!)V_j p.
StateFormula reduce_state(const StateFormula& alpha);

/// Applies reduce_state to every state subformula. The temporal skeleton is
/// left untouched.
TemporalFormula reduce(const TemporalFormula& phi);

/// K_i K_i a -> K_i a and K_i K_j K_i a -> K_j K_i a, bottom-up.
StateFormula collapse_nesting(const StateFormula& alpha);

}  // namespace influence

#endif  // INFLUENCE_REDUCTION_HPP
