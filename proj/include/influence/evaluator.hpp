#ifndef INFLUENCE_EVALUATOR_HPP
#define INFLUENCE_EVALUATOR_HPP

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "influence/diffusion.hpp"
#include "influence/formula.hpp"

namespace influence {

/// Truth of a state formula at s. K_i enumerates the ~_i class of s.
bool eval_state(const StateFormula& alpha, const State& s);

/// Exact truth of phi at time k of the infinite history represented by the
/// lasso. Positions past the end fold into the cycle.
bool eval(const TemporalFormula& phi, const Lasso& lasso, std::size_t k = 0);

/// Labels every position of one lasso, caching per subformula. Useful when
/// many formulas are checked on the same history.
class LassoEvaluator {
 public:
  explicit LassoEvaluator(const Lasso& lasso) : lasso_(lasso) {}

  bool operator()(const TemporalFormula& phi, std::size_t k = 0);
  /// Truth of phi at each of the lasso's positions.
  const std::vector<bool>& labels(const TemporalFormula& phi);

 private:
  const Lasso& lasso_;
  std::unordered_map<TemporalFormula, std::vector<bool>> cache_;
};

/// Formula progression: the obligation left for position k+1 after reading
/// s at position k. phi holds at k iff s satisfies the state part and the
/// result holds at k+1. Constants are folded away.
TemporalFormula progress(const TemporalFormula& phi, const State& s);

}  // namespace influence

#endif  // INFLUENCE_EVALUATOR_HPP
