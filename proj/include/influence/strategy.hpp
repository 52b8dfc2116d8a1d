#ifndef INFLUENCE_STRATEGY_HPP
#define INFLUENCE_STRATEGY_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "influence/diffusion.hpp"
#include "influence/formula.hpp"

namespace influence {

/// What agent i observes at a state: its own beliefs, the whole visibility
/// profile and the visible beliefs of the others. Equal keys <=> ~_i.
struct ClassKey {
  std::uint32_t beliefs = 0;  ///< own cells and visible cells only
  std::uint32_t visibility = 0;

  friend bool operator==(ClassKey, ClassKey) = default;
  std::uint64_t code(Dimensions d) const {
    return beliefs | (static_cast<std::uint64_t>(visibility) << d.cells());
  }
};

ClassKey class_key(const State& s, AgentId i);

/// Number of ~_i classes: 4^m own cells times 3^((n-1)m) others (hidden, or
/// visible with either value). Saturates at UINT64_MAX.
std::uint64_t class_count(Dimensions d);

/// Dense numbering of agent i's classes, computed arithmetically.
std::uint64_t class_index(const State& s, AgentId i);
/// The member of class k with every hidden belief set to 0.
State class_representative(Dimensions d, AgentId i, std::uint64_t k);

/// `(1?,10)/(11,00)`: the belief matrix with `?` on cells i cannot see, then
/// the visibility matrix.
std::string format_class(Dimensions d, AgentId i, ClassKey key);
/// Inverse of format_class. Throws std::invalid_argument.
ClassKey parse_class(std::string_view text, Dimensions d, AgentId i);

/// A uniform state-based strategy Q_i. Every form maps a state to an action
/// through class_key only, so ~_i-equivalent states always get the same
/// action.
class Strategy {
 public:
  enum class Kind : std::uint8_t { Constant, Rules, Dense, Table };

  struct Rule {
    StateFormula condition;  ///< tested as K_i condition
    Action action;
  };

  Strategy() = default;
  static Strategy constant(AgentId i, Action a);
  /// First rule whose condition agent i knows wins; else `otherwise`.
  static Strategy rules(AgentId i, std::vector<Rule> rules, Action otherwise);
  /// One action per class index.
  static Strategy dense(AgentId i, Dimensions d, std::vector<Action> actions);
  /// Explicit classes (keyed by ClassKey::code); the rest get `otherwise`.
  static Strategy table(AgentId i, Dimensions d, std::map<std::uint64_t, Action> entries, Action otherwise);

  AgentId agent() const { return agent_; }
  Kind kind() const { return kind_; }
  Action operator()(const State& s) const;

  /// Human-readable form; tables list their classes with format_class.
  std::string describe(const Vocabulary& vocab) const;

  const std::vector<Rule>& rule_list() const { return rules_; }
  const std::map<std::uint64_t, Action>& table_entries() const { return table_; }
  Action fallback() const { return otherwise_; }

 private:
  Kind kind_ = Kind::Constant;
  AgentId agent_{};
  Dimensions dims_{};
  Action otherwise_ = Action::skip();
  std::vector<Rule> rules_;
  std::vector<StateFormula> known_;  // K_i condition, per rule
  std::shared_ptr<const std::vector<Action>> dense_;
  std::map<std::uint64_t, Action> table_;
};

using StrategyProfile = std::vector<Strategy>;

JointPolicy joint_policy(const StrategyProfile& profile);

Lasso induced_lasso(const State& s0, const StrategyProfile& profile, const InfluenceNetwork& net,
                    std::span<const RulePtr> rules, const StateSpaceGuard& guard = {});

/// if B[i,p] then reveal p else hide p; the two actions swap when `negative`.
Strategy consensus_strategy(AgentId i, bool negative, IssueId p = IssueId{0});

}  // namespace influence

#endif  // INFLUENCE_STRATEGY_HPP
