#include "influence/diffusion.hpp"

#include <array>
#include <bit>
#include <unordered_map>

namespace influence {

std::vector<Action> all_actions(std::uint32_t issues) {
  std::vector<Action> out;
  out.reserve(action_count(issues));
  for (std::uint32_t k = 0; k < action_count(issues); ++k) out.push_back(Action::from_index(k, issues));
  return out;
}

std::string to_string(Action a, const Vocabulary& vocab) {
  switch (a.kind()) {
    case Action::Kind::Skip: return "skip";
    case Action::Kind::Reveal: return "reveal " + vocab.issue_name(a.issue());
    case Action::Kind::Hide: return "hide " + vocab.issue_name(a.issue());
  }
  return "skip";
}

std::optional<Action> parse_action(std::string_view text, const Vocabulary& vocab) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text == "skip") return Action::skip();
  const auto space = text.find(' ');
  if (space == std::string_view::npos) return std::nullopt;
  const std::string_view verb = text.substr(0, space);
  const auto issue = vocab.find_issue(trim(text.substr(space + 1)));
  if (!issue) return std::nullopt;
  if (verb == "reveal") return Action::reveal(*issue);
  if (verb == "hide") return Action::hide(*issue);
  return std::nullopt;
}

std::string to_string(const JointAction& a, const Vocabulary& vocab) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ',';
    out += to_string(a[i], vocab);
  }
  return out;
}

namespace {

class UnanimousRule final : public AggregationRule {
 public:
  std::string_view name() const override { return "unanimous"; }
  OpinionVector aggregate(OpinionVector own, std::span<const PublicOpinion> influencers,
                          std::uint32_t) const override {
    std::uint32_t any_true = 0;
    std::uint32_t any_false = 0;
    for (const PublicOpinion& pub : influencers) {
      any_true |= pub.value & pub.known;
      any_false |= ~pub.value & pub.known;
    }
    const std::uint32_t to_true = any_true & ~any_false;
    const std::uint32_t to_false = any_false & ~any_true;
    return {(own.bits | to_true) & ~to_false};
  }
};

class MajorityRule final : public AggregationRule {
 public:
  std::string_view name() const override { return "majority"; }
  OpinionVector aggregate(OpinionVector own, std::span<const PublicOpinion> influencers,
                          std::uint32_t issues) const override {
    OpinionVector out = own;
    for (std::uint32_t p = 0; p < issues; ++p) {
      int balance = 0;
      for (const PublicOpinion& pub : influencers) {
        const PublicValue v = pub[IssueId{p}];
        if (v == PublicValue::True) ++balance;
        if (v == PublicValue::False) --balance;
      }
      if (balance > 0) out.bits |= 1u << p;
      if (balance < 0) out.bits &= ~(1u << p);
    }
    return out;
  }
};

// Visibility after the joint action.
std::uint32_t apply_actions(const State& s, std::span<const Action> joint) {
  const Dimensions d = s.dims();
  std::uint32_t vis = s.visibility_bits();
  for (std::uint32_t i = 0; i < d.agents; ++i) {
    const Action a = joint[i];
    if (a.kind() == Action::Kind::Skip) continue;
    const std::uint32_t bit = 1u << d.cell(AgentId{i}, a.issue());
    vis = a.kind() == Action::Kind::Reveal ? (vis | bit) : (vis & ~bit);
  }
  return vis;
}

// Gathers P_j for j in Inf(i) into buf; returns the filled prefix.
std::span<const PublicOpinion> influencer_views(const State& s, const InfluenceNetwork& net, AgentId i,
                                                std::array<PublicOpinion, 64>& buf) {
  std::size_t n = 0;
  for (std::uint64_t mask = net.influencer_mask(i); mask != 0; mask &= mask - 1) {
    const AgentId j{static_cast<std::uint32_t>(std::countr_zero(mask))};
    buf[n++] = public_opinion(s, j);
  }
  return {buf.data(), n};
}

}  // namespace

RulePtr unanimous_rule() {
  static const RulePtr rule = std::make_shared<UnanimousRule>();
  return rule;
}

RulePtr majority_rule() {
  static const RulePtr rule = std::make_shared<MajorityRule>();
  return rule;
}

RulePtr rule_by_name(std::string_view name) {
  if (name == "unanimous") return unanimous_rule();
  if (name == "majority") return majority_rule();
  return nullptr;
}

OpinionVector unanimous_update(const State& s, const InfluenceNetwork& net, AgentId i) {
  std::array<PublicOpinion, 64> buf;
  return unanimous_rule()->aggregate(s.beliefs_of(i), influencer_views(s, net, i, buf), s.dims().issues);
}

State transition(const State& s, std::span<const Action> joint, const InfluenceNetwork& net,
                 std::span<const RulePtr> rules) {
  const Dimensions d = s.dims();
  if (joint.size() != d.agents) throw std::invalid_argument("joint action must assign one action per agent");
  if (rules.size() != d.agents) throw std::invalid_argument("one aggregation rule per agent is required");
  const State revealed(d, s.belief_bits(), apply_actions(s, joint));
  State next = revealed;
  std::array<PublicOpinion, 64> buf;
  for (std::uint32_t i = 0; i < d.agents; ++i) {
    const AgentId agent{i};
    next.set_beliefs_of(agent, rules[i]->aggregate(revealed.beliefs_of(agent),
                                                   influencer_views(revealed, net, agent, buf), d.issues));
  }
  return next;
}

Lasso induced_lasso(const State& s0, const JointPolicy& policy, const InfluenceNetwork& net,
                    std::span<const RulePtr> rules, const StateSpaceGuard& guard) {
  Lasso lasso;
  std::unordered_map<std::uint64_t, std::size_t> seen;
  State current = s0;
  const std::uint64_t limit = std::min<std::uint64_t>(guard.max_states, 2 * s0.dims().cells() > 62
                                                                            ? guard.max_states
                                                                            : state_count(s0.dims()));
  while (true) {
    const auto [it, inserted] = seen.emplace(current.code(), lasso.states.size());
    if (!inserted) {
      lasso.cycle_start = it->second;
      return lasso;
    }
    if (lasso.states.size() >= limit) throw BudgetExceeded("history exceeded the state-space guard before cycling");
    JointAction joint = policy(current);
    State next = transition(current, joint, net, rules);
    lasso.states.push_back(current);
    lasso.actions.push_back(std::move(joint));
    current = next;
  }
}

std::string format_trace_line(std::size_t t, const State& s, const JointAction& a, const Vocabulary& vocab) {
  const std::string full = format_state(s);
  // full is "((B),(V))"; split the two matrices.
  const std::size_t mid = full.find("),(");
  const std::string beliefs = full.substr(2, mid - 2);
  const std::string visibility = full.substr(mid + 3, full.size() - mid - 5);
  return std::to_string(t) + " | " + beliefs + " | " + visibility + " | " + (a.empty() ? std::string("-") : to_string(a, vocab));
}

}  // namespace influence
