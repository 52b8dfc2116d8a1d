#ifndef INFLUENCE_GAME_ANALYSIS_HPP
#define INFLUENCE_GAME_ANALYSIS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "influence/diffusion.hpp"
#include "influence/formula.hpp"
#include "influence/strategy.hpp"

namespace influence {

/// IG = (N, I, E, F_i, S_0, gamma_1..gamma_n).
struct InfluenceGame {
  Vocabulary vocab;
  InfluenceNetwork network;
  std::vector<RulePtr> rules;  ///< one per agent
  State initial;
  std::vector<TemporalFormula> goals;  ///< one per agent

  Dimensions dims() const { return initial.dims(); }
  /// Throws std::invalid_argument when sizes disagree.
  void validate() const;
};

/// Which strategies a quantifier ranges over.
///
/// Full is every class -> action map; Reachable is the same restricted to the
/// classes reachable from the initial states under arbitrary play (the other
/// classes can never be consulted). Constant is the 2m+1 constant
/// strategies; Table is an explicit per-agent list.
enum class FamilyKind : std::uint8_t { Constant, Full, Reachable, Table };

std::string_view to_string(FamilyKind kind);
std::optional<FamilyKind> parse_family(std::string_view name);

struct StrategyFamily {
  FamilyKind kind = FamilyKind::Constant;
  std::vector<std::vector<Strategy>> alternatives;  ///< Table only, indexed by agent

  static StrategyFamily constant() { return {FamilyKind::Constant, {}}; }
  static StrategyFamily full() { return {FamilyKind::Full, {}}; }
  static StrategyFamily reachable() { return {FamilyKind::Reachable, {}}; }
  static StrategyFamily table(std::vector<std::vector<Strategy>> alternatives) {
    return {FamilyKind::Table, std::move(alternatives)};
  }
};

struct AnalysisOptions {
  /// Cap on the strategies one quantified agent may range over, and on the
  /// goal evaluations of the lazy search. The exhaustive route also needs
  /// the whole tuple space under it.
  std::uint64_t budget = std::uint64_t{1} << 24;
  StateSpaceGuard guard;
  /// Enumerate every candidate tuple literally instead of the lazy search.
  /// Both give the same verdict; this one is the slow cross-check.
  bool exhaustive = false;
  unsigned threads = 1;  ///< exhaustive route only
};

/// Replayable evidence for a verdict.
struct Certificate {
  std::optional<AgentId> agent;      ///< deviating agent (Nash, best response)
  std::vector<Strategy> strategies;  ///< the quantified strategies that decide
  std::optional<State> initial;      ///< initial state where it shows
};

struct Verdict {
  bool holds = false;
  FamilyKind family = FamilyKind::Constant;
  std::uint64_t family_size = 0;  ///< candidate tuples in the quantified block
  std::uint64_t evaluations = 0;  ///< goal checks on induced histories
  std::optional<Certificate> witness;
};

/// Does the history induced from s0 satisfy the goal at time 0?
bool satisfies(const InfluenceGame& game, const TemporalFormula& goal, const StrategyProfile& profile,
               const State& s0, const StateSpaceGuard& guard = {});
/// Per-agent goal satisfaction.
std::vector<bool> satisfies(const InfluenceGame& game, const StrategyProfile& profile, const State& s0,
                            const StateSpaceGuard& guard = {});

/// Initial states an agent has to reckon with: S_0's ~_i class when
/// uniform, {S_0} otherwise.
std::vector<State> initial_states(const InfluenceGame& game, AgentId i, bool uniform);

/// q wins for i against every opponent profile in the family. The
/// certificate holds a defeating opponent profile and initial state.
Verdict is_winning(const InfluenceGame& game, AgentId i, const Strategy& q, const StrategyFamily& family,
                   bool uniform, const AnalysisOptions& options = {});

/// For every opponent profile and alternative q' of i in the family, q'
/// satisfying the goal implies q does. The certificate holds the opponents,
/// the better alternative (last) and the initial state.
Verdict is_weakly_dominant(const InfluenceGame& game, AgentId i, const Strategy& q, const StrategyFamily& family,
                           bool uniform, const AnalysisOptions& options = {});

/// q wins from every state of S_0's ~_i class against the others' part of
/// `profile`, or no alternative in the family does. The certificate holds an
/// alternative that wins from the whole class and a state where q fails.
Verdict is_best_response(const InfluenceGame& game, AgentId i, const Strategy& q, const StrategyProfile& profile,
                         const StrategyFamily& family, const AnalysisOptions& options = {});

/// Every Q_i is a best response. On failure the certificate names the agent,
/// its profitable deviation and an initial state where Q_i fails.
Verdict is_nash(const InfluenceGame& game, const StrategyProfile& profile, const StrategyFamily& family,
                const AnalysisOptions& options = {});

/// Some profile in the family makes the goal true from s0.
Verdict is_coherent(const InfluenceGame& game, const TemporalFormula& goal, const State& s0,
                    const StrategyFamily& family, const AnalysisOptions& options = {});

/// i controls j: Inf(j) is non-empty and consists of i and agents i
/// controls (least fixpoint). Throws std::invalid_argument when i == j.
bool controls(const InfluenceNetwork& net, AgentId i, AgentId j);

/// Classes of agent i that occur in states reachable from `from` under
/// arbitrary joint actions, as ClassKey codes in increasing order.
std::vector<std::uint64_t> reachable_classes(const InfluenceGame& game, AgentId i, const std::vector<State>& from,
                                             const StateSpaceGuard& guard = {});

enum class BoundedStatus : std::uint8_t { Winning, NotWinning, Undetermined };

struct BoundedResult {
  BoundedStatus status = BoundedStatus::Undetermined;
  /// "search" when the horizon-bounded game tree decided, "fixpoint" when
  /// the universal path check over the reachable graph did.
  std::string method;
  std::uint64_t nodes = 0;
  /// A losing play when NotWinning: states[0] is the initial state and
  /// actions[t] leads from states[t] to states[t+1].
  std::vector<State> states;
  std::vector<JointAction> actions;
};

/// q against opponents who may pick any joint action at every step,
/// history-dependent or not. Winning here implies is_winning for every
/// family. The tree is explored to `horizon` transitions with formula
/// progression; if that leaves the verdict open, a sound universal fixpoint
/// over the reachable graph is tried before giving up.
BoundedResult is_winning_bounded(const InfluenceGame& game, AgentId i, const Strategy& q, std::size_t horizon,
                                 bool uniform, const AnalysisOptions& options = {});

struct ProbeResult {
  bool deviation_found = false;
  bool already_winning = false;  ///< Q_i wins on the whole class; nothing to gain
  std::uint64_t nodes = 0;
  /// For a found deviation: `t=<step> <class> <action>` along the plan.
  std::vector<std::string> plan;
};

/// Looks for a history-dependent deviation of agent i that secures its goal
/// from every state of S_0's ~_i class within `horizon` steps while the
/// others keep playing `profile`. Deviations may condition on everything i
/// has observed so far.
ProbeResult deviation_probe(const InfluenceGame& game, const StrategyProfile& profile, AgentId i,
                            std::size_t horizon);

}  // namespace influence

#endif  // INFLUENCE_GAME_ANALYSIS_HPP
