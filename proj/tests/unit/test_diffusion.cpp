#include <gtest/gtest.h>

#include "influence/diffusion.hpp"
#include "influence/strategy.hpp"
#include "oracle.hpp"
#include "random.hpp"

using namespace influence;

namespace {

const Dimensions kThree{3, 1};
const AgentId I{0}, J{1}, K{2};
const IssueId P{0};

State s3(std::vector<int> b, std::vector<int> v) {
  std::vector<std::vector<int>> rb, rv;
  for (int x : b) rb.push_back({x});
  for (int x : v) rv.push_back({x});
  return State::from_rows(kThree, rb, rv);
}

std::vector<RulePtr> unanimous(std::uint32_t n) { return std::vector<RulePtr>(n, unanimous_rule()); }

}  // namespace

TEST(Action, IndexOrderAndParsing) {
  const Vocabulary v({"a"}, {"p", "q"});
  const std::vector<Action> all = all_actions(2);
  ASSERT_EQ(all.size(), 5u);
  for (std::uint32_t k = 0; k < all.size(); ++k) {
    EXPECT_EQ(all[k].index(2), k);
    EXPECT_EQ(parse_action(to_string(all[k], v), v), all[k]);
  }
  EXPECT_EQ(to_string(Action::reveal(IssueId{1}), v), "reveal q");
  EXPECT_FALSE(parse_action("reveal r", v));
  EXPECT_FALSE(parse_action("shout p", v));
}

TEST(Aggregation, UnanimousCases) {
  const InfluenceNetwork net(3, {{J, I}, {K, I}});
  EXPECT_TRUE(unanimous_update(s3({0, 1, 1}, {1, 1, 1}), net, I)[P]);
  EXPECT_FALSE(unanimous_update(s3({0, 1, 1}, {1, 0, 0}), net, I)[P]);
  EXPECT_TRUE(unanimous_update(s3({1, 1, 0}, {1, 1, 1}), net, I)[P]);
  EXPECT_FALSE(unanimous_update(s3({0, 1, 0}, {1, 1, 1}), net, I)[P]);
}

TEST(Transition, FanInGoldenSteps) {
  const InfluenceNetwork net(3, {{J, I}, {K, I}});
  const auto rules = unanimous(3);
  const State h0 = s3({0, 1, 1}, {1, 1, 0});
  const JointAction a0{Action::skip(), Action::skip(), Action::reveal(P)};
  const State h1 = transition(h0, a0, net, rules);
  EXPECT_EQ(h1, s3({1, 1, 1}, {1, 1, 1}));
  const JointAction a1{Action::skip(), Action::hide(P), Action::skip()};
  EXPECT_EQ(transition(h1, a1, net, rules), s3({1, 1, 1}, {1, 0, 1}));
}

TEST(Transition, AggregationReadsOldBeliefsSimultaneously) {
  // Mutual influence with opposite visible opinions: both switch at once.
  const Dimensions d{2, 1};
  const InfluenceNetwork net = InfluenceNetwork::complete(2);
  const State s = State::from_rows(d, {{0}, {1}}, {{1}, {1}});
  const State t = transition(s, JointAction{Action::skip(), Action::skip()}, net, unanimous(2));
  EXPECT_EQ(t, State::from_rows(d, {{1}, {0}}, {{1}, {1}}));
}

TEST(Transition, VisibilityIsAppliedBeforeAggregation) {
  const Dimensions d{2, 1};
  const InfluenceNetwork net(2, {{AgentId{0}, AgentId{1}}});
  const State s = State::from_rows(d, {{1}, {0}}, {{0}, {0}});
  const State t = transition(s, JointAction{Action::reveal(P), Action::skip()}, net, unanimous(2));
  EXPECT_TRUE(t.belief(AgentId{1}, P));
}

TEST(Transition, MatchesOracleOnRandomInstances) {
  gen::Rng rng(11);
  for (int k = 0; k < 3000; ++k) {
    const std::uint32_t n = 1 + k % 4, m = 1 + (k / 4) % 3;
    InfluenceGame g = gen::random_game(rng, n, m, true);
    const State s = gen::random_state(rng, g.dims());
    JointAction joint;
    for (std::uint32_t i = 0; i < n; ++i) joint.push_back(gen::random_action(rng, m));
    std::vector<std::string> names;
    for (const RulePtr& r : g.rules) names.push_back(gen::rule_name(r));
    ASSERT_EQ(transition(s, joint, g.network, g.rules), oracle::successor(s, joint, oracle::adjacency(g.network), names));
  }
}

TEST(Transition, MajorityRule) {
  const InfluenceNetwork net(4, {{AgentId{1}, AgentId{0}}, {AgentId{2}, AgentId{0}}, {AgentId{3}, AgentId{0}}});
  const Dimensions d{4, 1};
  const std::vector<RulePtr> rules(4, majority_rule());
  const JointAction skip(4, Action::skip());
  EXPECT_TRUE(transition(State::from_rows(d, {{0}, {1}, {1}, {0}}, {{0}, {1}, {1}, {1}}), skip, net, rules)
                  .belief(AgentId{0}, P));
  // tie keeps the own opinion
  EXPECT_FALSE(transition(State::from_rows(d, {{0}, {1}, {0}, {0}}, {{0}, {1}, {1}, {0}}), skip, net, rules)
                   .belief(AgentId{0}, P));
  EXPECT_EQ(rule_by_name("majority")->name(), "majority");
  EXPECT_EQ(rule_by_name("plurality"), nullptr);
}

TEST(Lasso, FixedPointHasEmptyPrefix) {
  const InfluenceNetwork net(3, {{J, I}, {K, I}});
  const State s = s3({1, 1, 1}, {1, 0, 1});
  const Lasso l = induced_lasso(s, [](const State&) { return JointAction(3, Action::skip()); }, net, unanimous(3));
  EXPECT_EQ(l.prefix_length(), 0u);
  EXPECT_EQ(l.cycle_length(), 1u);
}

TEST(Lasso, FanInProfileExtendedWithSkip) {
  const InfluenceNetwork net(3, {{J, I}, {K, I}});
  const State h0 = s3({0, 1, 1}, {1, 1, 0});
  const State h1 = s3({1, 1, 1}, {1, 1, 1});
  const JointPolicy policy = [&](const State& s) {
    if (s == h0) return JointAction{Action::skip(), Action::skip(), Action::reveal(P)};
    if (s == h1) return JointAction{Action::skip(), Action::hide(P), Action::skip()};
    return JointAction(3, Action::skip());
  };
  const Lasso l = induced_lasso(h0, policy, net, unanimous(3));
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l.cycle_start, 2u);
  EXPECT_EQ(l.states[2], s3({1, 1, 1}, {1, 0, 1}));
  EXPECT_EQ(l.at(10), l.states[2]);
}

TEST(Lasso, AgreesWithOracleUnrolling) {
  gen::Rng rng(5);
  for (int k = 0; k < 300; ++k) {
    const std::uint32_t n = 1 + k % 3;
    InfluenceGame g = gen::random_game(rng, n, 1 + k % 2);
    const StrategyProfile profile = gen::random_profile(rng, g.dims());
    const Lasso l = induced_lasso(g.initial, profile, g.network, g.rules);
    const auto policy = [&](const State& s) { return joint_policy(profile)(s); };
    std::vector<std::string> names(n, "unanimous");
    const std::size_t len = l.size() + 2 * l.cycle_length() + 3;
    const std::vector<State> ref = oracle::unroll(g.initial, policy, oracle::adjacency(g.network), names, len);
    for (std::size_t t = 0; t < len; ++t) ASSERT_EQ(l.at(t), ref[t]);
    const auto [a, b] = oracle::first_repeat(ref);
    EXPECT_EQ(a, l.cycle_start);
    EXPECT_EQ(b, l.size());
  }
}

TEST(Lasso, ConsensusProfileSettlesWithinTwoSteps) {
  const Dimensions d{2, 1};
  const InfluenceNetwork net = InfluenceNetwork::complete(2);
  const StrategyProfile q{consensus_strategy(AgentId{0}, false), consensus_strategy(AgentId{1}, false)};
  for_each_state(d, [&](const State& s0) {
    const Lasso l = induced_lasso(s0, q, net, unanimous(2));
    EXPECT_LE(l.prefix_length(), 2u) << format_state(s0);
    EXPECT_EQ(l.cycle_length(), 1u) << format_state(s0);
  });
}

TEST(Lasso, GuardStopsRunawayHistories) {
  const InfluenceNetwork net = InfluenceNetwork::complete(2);
  const State s = State::from_rows(Dimensions{2, 1}, {{0}, {1}}, {{1}, {1}});
  StateSpaceGuard guard{1};
  EXPECT_THROW(induced_lasso(s, [](const State&) { return JointAction(2, Action::skip()); }, net, unanimous(2), guard),
               BudgetExceeded);
}

TEST(Trace, LineFormat) {
  const Vocabulary v({"i", "j", "k"}, {"p"});
  EXPECT_EQ(format_trace_line(0, s3({0, 1, 1}, {1, 1, 0}), {Action::skip(), Action::skip(), Action::reveal(P)}, v),
            "0 | 0,1,1 | 1,1,0 | skip,skip,reveal p");
  EXPECT_EQ(format_trace_line(2, s3({1, 1, 1}, {1, 0, 1}), {}, v), "2 | 1,1,1 | 1,0,1 | -");
}
