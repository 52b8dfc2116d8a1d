#ifndef INFLUENCE_DIFFUSION_HPP
#define INFLUENCE_DIFFUSION_HPP

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "influence/core_model.hpp"

namespace influence {

/// reveal(p), hide(p) or skip.
class Action {
 public:
  enum class Kind : std::uint8_t { Skip, Reveal, Hide };

  constexpr Action() = default;
  static constexpr Action skip() { return Action(Kind::Skip, IssueId{0}); }
  static constexpr Action reveal(IssueId p) { return Action(Kind::Reveal, p); }
  static constexpr Action hide(IssueId p) { return Action(Kind::Hide, p); }

  constexpr Kind kind() const { return kind_; }
  constexpr IssueId issue() const { return issue_; }

  /// Position in the canonical order skip, reveal(p_1..p_m), hide(p_1..p_m).
  constexpr std::uint32_t index(std::uint32_t issues) const {
    switch (kind_) {
      case Kind::Skip: return 0;
      case Kind::Reveal: return 1 + issue_.value;
      case Kind::Hide: return 1 + issues + issue_.value;
    }
    return 0;
  }
  static constexpr Action from_index(std::uint32_t index, std::uint32_t issues) {
    if (index == 0) return skip();
    if (index <= issues) return reveal(IssueId{index - 1});
    return hide(IssueId{index - 1 - issues});
  }

  friend constexpr bool operator==(Action a, Action b) {
    return a.kind_ == b.kind_ && (a.kind_ == Kind::Skip || a.issue_ == b.issue_);
  }

 private:
  constexpr Action(Kind k, IssueId p) : kind_(k), issue_(p) {}
  Kind kind_ = Kind::Skip;
  IssueId issue_{};
};

/// |A| = 2m + 1.
constexpr std::uint32_t action_count(std::uint32_t issues) { return 2 * issues + 1; }
/// All actions in canonical order.
std::vector<Action> all_actions(std::uint32_t issues);

std::string to_string(Action a, const Vocabulary& vocab);
/// Accepts `skip`, `reveal <issue>`, `hide <issue>`.
std::optional<Action> parse_action(std::string_view text, const Vocabulary& vocab);

using JointAction = std::vector<Action>;

std::string to_string(const JointAction& a, const Vocabulary& vocab);

/// An aggregation procedure F_i. Receives the agent's own opinion and the
/// public opinions of its influencers (computed from the current beliefs and
/// the post-action visibility) and returns the new private opinion.
class AggregationRule {
 public:
  virtual ~AggregationRule() = default;
  virtual std::string_view name() const = 0;
  virtual OpinionVector aggregate(OpinionVector own, std::span<const PublicOpinion> influencers,
                                  std::uint32_t issues) const = 0;
};

using RulePtr = std::shared_ptr<const AggregationRule>;

/// Unanimous issue-by-issue aggregation: adopt x on p when every influencer
/// expressing an opinion on p says x; keep the own opinion otherwise.
RulePtr unanimous_rule();
/// Strict majority of the expressed opinions; ties and silence keep the own
/// opinion.
RulePtr majority_rule();
/// "unanimous" or "majority"; nullptr for anything else.
RulePtr rule_by_name(std::string_view name);

/// The unanimous update of agent i at s, reading the visibility stored in s.
OpinionVector unanimous_update(const State& s, const InfluenceNetwork& net, AgentId i);

/// Deterministic successor: visibility is updated from the actions first;
/// then every agent aggregates the public profile formed by the old beliefs
/// and the new visibility, all simultaneously.
State transition(const State& s, std::span<const Action> joint, const InfluenceNetwork& net,
                 std::span<const RulePtr> rules);

/// An ultimately periodic history: states[0, cycle_start) is the prefix and
/// states[cycle_start, size) repeats forever. actions[t] is the joint action
/// taken at states[t]; the last one leads back to states[cycle_start].
struct Lasso {
  std::vector<State> states;
  std::vector<JointAction> actions;
  std::size_t cycle_start = 0;

  std::size_t size() const { return states.size(); }
  std::size_t prefix_length() const { return cycle_start; }
  std::size_t cycle_length() const { return states.size() - cycle_start; }
  /// Index into states of time step k of the infinite unfolding.
  std::size_t position(std::size_t k) const {
    return k < states.size() ? k : cycle_start + (k - cycle_start) % cycle_length();
  }
  /// Index of the successor of position k.
  std::size_t successor(std::size_t k) const { return k + 1 < states.size() ? k + 1 : cycle_start; }
  const State& at(std::size_t k) const { return states[position(k)]; }
};

/// Picks the joint action to play at a state.
using JointPolicy = std::function<JointAction(const State&)>;

/// Iterates H_{t+1} = transition(H_t, policy(H_t)) until the first repeated
/// state. Throws BudgetExceeded when the history grows past the guard.
Lasso induced_lasso(const State& s0, const JointPolicy& policy, const InfluenceNetwork& net,
                    std::span<const RulePtr> rules, const StateSpaceGuard& guard = {});

/// `t | B | V | a_1,..,a_n`, matrices as in format_state. An empty joint
/// action prints as `-`.
std::string format_trace_line(std::size_t t, const State& s, const JointAction& a, const Vocabulary& vocab);

}  // namespace influence

#endif  // INFLUENCE_DIFFUSION_HPP
