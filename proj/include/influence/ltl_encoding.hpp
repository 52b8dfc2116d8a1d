#ifndef INFLUENCE_LTL_ENCODING_HPP
#define INFLUENCE_LTL_ENCODING_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "influence/diffusion.hpp"
#include "influence/formula.hpp"
#include "influence/parser.hpp"

namespace influence {

/// alpha(S): the nm signed belief literals, then the nm signed visibility
/// literals, agent-major. True at S and nowhere else.
StateFormula state_characteristic(const State& s);

/// beta_i(a): X V[i,p] for reveal p, X !V[i,p] for hide p, true for skip.
TemporalFormula action_effect(AgentId i, Action a);

/// tau_i(Q_i) = AND over all states S of alpha(S) -> beta_i(Q_i(S)). The
/// conjunction ranges over the whole state space, so the guard applies.
TemporalFormula encode_strategy(AgentId i, Dimensions d, const std::function<Action(const State&)>& q,
                                const StateSpaceGuard& guard = {});
/// tau(Q) = AND_i tau_i(Q_i).
TemporalFormula encode_profile(Dimensions d, const std::vector<std::function<Action(const State&)>>& profile,
                               const StateSpaceGuard& guard = {});

/// unan(i, p) (positive) or unan(i, !p):
///
///   X(+-B[i,p]) <-> (AND_j X !V[j,p] & +-B[i,p])
///                 | (OR_j X V[j,p] & AND_j (X V[j,p] -> +-B[j,p]))
///                 | (OR_{j != z} (X V[j,p] & X V[z,p] & B[j,p] & !B[z,p]) & +-B[i,p])
///
/// with j, z ranging over Inf(i). The biconditional is written as two
/// implications. Throws std::invalid_argument when Inf(i) is empty.
TemporalFormula encode_unanimity(const InfluenceNetwork& net, AgentId i, IssueId p, bool positive);

/// tau(F^U): unan(i,p) & unan(i,!p) for every issue and every agent with an
/// influencer. `true` when nobody has one.
TemporalFormula encode_transition(const InfluenceNetwork& net, Dimensions d);

/// Proposition names for export: b_<agent>_<issue> and v_<agent>_<issue>
/// from the vocabulary names, or from indices if two names would collide.
class PropositionTable {
 public:
  struct Entry {
    std::string name;
    bool belief = true;
    AgentId agent;
    IssueId issue;
  };

  explicit PropositionTable(const Vocabulary& vocab);

  const std::vector<Entry>& entries() const { return entries_; }
  const std::string& name(bool belief, AgentId i, IssueId p) const;
  std::optional<StateFormula> atom(std::string_view name) const;
  /// Resolver for parse_formula, so exported text parses back.
  AtomResolver resolver() const;
  /// Sidecar text: one `<name> bel|vis <agent> <issue>` line per entry.
  std::string sidecar(const Vocabulary& vocab) const;

 private:
  std::vector<Entry> entries_;
  Dimensions dims_;
};

/// Plain-text LTL: X U F G & | ! -> with exported proposition names. A
/// formula with K cannot be exported and throws std::invalid_argument.
std::string export_formula(const TemporalFormula& phi, const PropositionTable& table);

}  // namespace influence

#endif  // INFLUENCE_LTL_ENCODING_HPP
