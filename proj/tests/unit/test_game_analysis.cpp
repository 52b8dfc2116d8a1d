#include <gtest/gtest.h>

#include "games.hpp"
#include "influence/game_io.hpp"
#include "influence/parser.hpp"
#include "oracle.hpp"
#include "random.hpp"

using namespace influence;

namespace {

struct Loaded {
  InfluenceGame game;
  StrategyProfile profile;
};

Loaded fixture(const std::string& name) {
  const std::string path = std::string(INFLUENCE_FIXTURES) + "/" + name;
  const std::string text = read_file(path);
  Loaded l{parse_game(text, path), {}};
  l.profile = embedded_strategies(text, l.game, path).profile;
  return l;
}

StrategyProfile with(StrategyProfile profile, const Strategy& q) {
  profile[q.agent().value] = q;
  return profile;
}

// The certificate's opponents, completed with q for agent i.
StrategyProfile completed(const Certificate& c, AgentId i, const Strategy& q, std::uint32_t agents) {
  StrategyProfile p;
  for (std::uint32_t j = 0; j < agents; ++j) p.push_back(Strategy::constant(AgentId{j}, Action::skip()));
  for (const Strategy& s : c.strategies) p[s.agent().value] = s;
  p[i.value] = q;
  return p;
}

gen::Rng seeded(std::uint64_t seed) { return gen::Rng(seed); }

InfluenceGame small_game(gen::Rng& rng, int goal_depth = 4) {
  InfluenceGame g = gen::random_game(rng, 2, 1, true);
  for (auto& goal : g.goals) goal = gen::random_formula(rng, g.dims(), goal_depth, 2, true);
  return g;
}

const AgentId A1{0}, A2{1}, A3{2};

}  // namespace

TEST(Controls, Examples) {
  const InfluenceGame tri = fixture("triangle.json").game;
  EXPECT_TRUE(controls(tri.network, A1, A2));
  EXPECT_TRUE(controls(tri.network, A1, A3));
  EXPECT_FALSE(controls(tri.network, A2, A3));
  EXPECT_FALSE(controls(tri.network, A2, A1));  // Ann has no influencers

  const InfluenceGame fan_in = fixture("fan_in.json").game;
  EXPECT_FALSE(controls(fan_in.network, A2, A1));
  EXPECT_FALSE(controls(fan_in.network, A3, A1));

  // A cycle not passing through i is not controlled.
  const InfluenceNetwork cyc(3, {{A1, A2}, {A2, A3}, {A3, A2}});
  EXPECT_FALSE(controls(cyc, A1, A2));
  EXPECT_TRUE(controls(InfluenceNetwork(3, {{A1, A2}, {A2, A3}}), A1, A3));
  EXPECT_THROW(controls(tri.network, A1, A1), std::invalid_argument);
}

TEST(Controls, MatchesOracleOnRandomNetworks) {
  gen::Rng rng = seeded(11);
  for (int round = 0; round < 300; ++round) {
    const std::uint32_t n = 2 + round % 5;
    const InfluenceNetwork net = gen::random_network(rng, n, 0.35);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        if (i != j) ASSERT_EQ(controls(net, AgentId{i}, AgentId{j}), oracle::controls(net, AgentId{i}, AgentId{j}));
  }
}

TEST(Satisfies, MatchesOracleUnrolling) {
  gen::Rng rng = seeded(12);
  for (int round = 0; round < 200; ++round) {
    InfluenceGame g = gen::random_game(rng, 2 + round % 2, 1 + round % 2, true);
    const StrategyProfile profile = gen::random_profile(rng, g.dims());
    const TemporalFormula goal = gen::random_formula(rng, g.dims(), 4, 2, true);
    const State s0 = gen::random_state(rng, g.dims());
    const Lasso l = induced_lasso(s0, profile, g.network, g.rules);
    ASSERT_EQ(satisfies(g, goal, profile, s0), oracle::eval_lasso(goal, l.states, l.cycle_start)) << round;
  }
}

TEST(Winning, TriangleYes) {
  const Loaded tri = fixture("triangle.json");
  const Strategy reveal = tri.profile[0];
  for (FamilyKind k : {FamilyKind::Constant, FamilyKind::Reachable}) {
    const Verdict v = is_winning(tri.game, A1, reveal, {k, {}}, false);
    EXPECT_TRUE(v.holds) << to_string(k);
  }
}

TEST(Winning, DroppedEdgeNoWithReplayableWitness) {
  const Loaded de = fixture("dropped_edge.json");
  const Strategy reveal = de.profile[0];
  AnalysisOptions roomy;
  roomy.budget = std::uint64_t{1} << 26;  // Jesse's reachable slot is 3^16
  const Verdict v = is_winning(de.game, A1, reveal, StrategyFamily::reachable(), false, roomy);
  ASSERT_FALSE(v.holds);
  ASSERT_TRUE(v.witness && v.witness->initial);
  const StrategyProfile p = completed(*v.witness, A1, reveal, 3);
  EXPECT_FALSE(satisfies(de.game, de.game.goals[0], p, *v.witness->initial));
}

TEST(Winning, IncoherentGoalIsNeverWon) {
  Loaded two = fixture("two_agents.json");
  two.game.goals[0] = parse_formula("F (B[2,p] & !B[2,p])", two.game.vocab);
  for (const Action& a : all_actions(1))
    EXPECT_FALSE(is_winning(two.game, A1, Strategy::constant(A1, a), StrategyFamily::full(), false).holds);
  EXPECT_FALSE(is_coherent(two.game, two.game.goals[0], two.game.initial, StrategyFamily::full()).holds);
}

TEST(Winning, FullFamilyMatchesOracle) {
  gen::Rng rng = seeded(13);
  for (int round = 0; round < 40; ++round) {
    const InfluenceGame g = small_game(rng);
    const AgentId i{static_cast<std::uint32_t>(round % 2)};
    const Strategy q = gen::random_strategy(rng, i, g.dims());
    const bool uniform = round % 3 == 0;
    const Verdict v = is_winning(g, i, q, StrategyFamily::full(), uniform);
    ASSERT_EQ(v.holds, oracle::winning_full(g, i, q, uniform)) << "round " << round;
    if (!v.holds) {
      const StrategyProfile p = completed(*v.witness, i, q, 2);
      ASSERT_FALSE(satisfies(g, g.goals[i.value], p, *v.witness->initial));
    }
  }
}

TEST(Winning, ReachableAgreesWithFull) {
  gen::Rng rng = seeded(14);
  for (int round = 0; round < 40; ++round) {
    const InfluenceGame g = small_game(rng);
    const AgentId i{static_cast<std::uint32_t>(round % 2)};
    const Strategy q = gen::random_strategy(rng, i, g.dims());
    const bool uniform = round % 2 == 0;
    ASSERT_EQ(is_winning(g, i, q, StrategyFamily::full(), uniform).holds,
              is_winning(g, i, q, StrategyFamily::reachable(), uniform).holds);
    ASSERT_EQ(is_weakly_dominant(g, i, q, StrategyFamily::full(), uniform).holds,
              is_weakly_dominant(g, i, q, StrategyFamily::reachable(), uniform).holds);
  }
}

TEST(Winning, LazyAgreesWithExhaustive) {
  gen::Rng rng = seeded(15);
  AnalysisOptions exhaustive;
  exhaustive.exhaustive = true;
  int coherence = 0;
  for (int round = 0; round < 25; ++round) {
    const InfluenceGame g = small_game(rng);
    const AgentId i{static_cast<std::uint32_t>(round % 2)};
    const Strategy q = gen::random_strategy(rng, i, g.dims());
    const StrategyFamily fam = StrategyFamily::reachable();
    ASSERT_EQ(is_winning(g, i, q, fam, true).holds, is_winning(g, i, q, fam, true, exhaustive).holds);
    const StrategyProfile profile = gen::random_profile(rng, g.dims());
    ASSERT_EQ(is_nash(g, profile, fam).holds, is_nash(g, profile, fam, exhaustive).holds);
    try {
      const bool literal = is_coherent(g, g.goals[0], g.initial, fam, exhaustive).holds;
      ASSERT_EQ(is_coherent(g, g.goals[0], g.initial, fam).holds, literal);
      ++coherence;
    } catch (const BudgetExceeded&) {
      // two reachable slots can multiply past the budget; skip those
    }
  }
  EXPECT_GT(coherence, 5);
}

TEST(Winning, ThreadCountDoesNotChangeTheAnswer) {
  gen::Rng rng = seeded(16);
  for (int round = 0; round < 10; ++round) {
    const InfluenceGame g = small_game(rng);
    const Strategy q = gen::random_strategy(rng, A1, g.dims());
    AnalysisOptions one, four;
    one.exhaustive = four.exhaustive = true;
    four.threads = 4;
    const Verdict a = is_winning(g, A1, q, StrategyFamily::reachable(), true, one);
    const Verdict b = is_winning(g, A1, q, StrategyFamily::reachable(), true, four);
    ASSERT_EQ(a.holds, b.holds);
    ASSERT_EQ(a.witness.has_value(), b.witness.has_value());
    if (a.witness) {
      ASSERT_EQ(a.witness->initial, b.witness->initial);
      ASSERT_EQ(a.witness->strategies.size(), b.witness->strategies.size());
      for (std::size_t k = 0; k < a.witness->strategies.size(); ++k)
        for_each_state(g.dims(), [&](const State& s) {
          ASSERT_EQ(a.witness->strategies[k](s), b.witness->strategies[k](s));
        });
    }
  }
}

TEST(Dominance, FullFamilyMatchesOracle) {
  gen::Rng rng = seeded(17);
  for (int round = 0; round < 40; ++round) {
    const InfluenceGame g = small_game(rng, 3);
    const AgentId i{static_cast<std::uint32_t>(round % 2)};
    const Strategy q = gen::random_strategy(rng, i, g.dims());
    const bool uniform = round % 2 == 1;
    const Verdict v = is_weakly_dominant(g, i, q, StrategyFamily::full(), uniform);
    ASSERT_EQ(v.holds, oracle::dominant_full(g, i, q, uniform)) << "round " << round;
    if (!v.holds) {
      // Same opponents: q loses, the alternative (last) wins.
      const Certificate& c = *v.witness;
      const Strategy& alt = c.strategies.back();
      Certificate opponents = c;
      opponents.strategies.pop_back();
      ASSERT_FALSE(satisfies(g, g.goals[i.value], completed(opponents, i, q, 2), *c.initial));
      ASSERT_TRUE(satisfies(g, g.goals[i.value], completed(opponents, i, alt, 2), *c.initial));
    }
  }
}

TEST(Dominance, TriangleRevealOverConstants) {
  const Loaded tri = fixture("triangle.json");
  EXPECT_TRUE(is_weakly_dominant(tri.game, A1, tri.profile[0], StrategyFamily::constant(), true).holds);
  EXPECT_FALSE(is_weakly_dominant(tri.game, A1, Strategy::constant(A1, Action::skip()), StrategyFamily::constant(),
                                  false).holds);
}

TEST(BestResponse, FullFamilyMatchesOracle) {
  gen::Rng rng = seeded(18);
  for (int round = 0; round < 40; ++round) {
    const InfluenceGame g = small_game(rng);
    const StrategyProfile profile = gen::random_profile(rng, g.dims());
    const AgentId i{static_cast<std::uint32_t>(round % 2)};
    const Verdict v = is_best_response(g, i, profile[i.value], profile, StrategyFamily::full());
    ASSERT_EQ(v.holds, oracle::best_response_full(g, i, profile)) << "round " << round;
  }
}

TEST(BestResponse, Examples) {
  const Loaded two = fixture("two_agents.json");
  const Strategy skip1 = Strategy::constant(A1, Action::skip());
  const Strategy reveal1 = Strategy::constant(A1, Action::reveal(IssueId{0}));
  const StrategyProfile profile{skip1, Strategy::constant(A2, Action::skip())};
  // Agent 1's goal needs agent 2 to come round; skipping never achieves it.
  EXPECT_FALSE(is_best_response(two.game, A1, skip1, profile, StrategyFamily::constant()).holds);
  EXPECT_TRUE(is_best_response(two.game, A1, reveal1, with(profile, reveal1), StrategyFamily::constant()).holds);
}

TEST(Nash, ConsensusProfileOverFullFamily) {
  const Loaded c2 = fixture("consensus2.json");
  const Verdict v = is_nash(c2.game, c2.profile, StrategyFamily::full());
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.family_size, 531441u);
  const Loaded c3 = fixture("consensus3.json");
  EXPECT_TRUE(is_nash(c3.game, c3.profile, StrategyFamily::constant()).holds);
}

TEST(Nash, WitnessReplays) {
  Loaded two = fixture("two_agents.json");
  two.game.goals[0] = parse_formula("F B[2,p]", two.game.vocab);
  two.game.goals[1] = parse_formula("F !B[1,p]", two.game.vocab);
  const StrategyProfile profile{Strategy::constant(A1, Action::hide(IssueId{0})),
                                Strategy::constant(A2, Action::hide(IssueId{0}))};
  const Verdict v = is_nash(two.game, profile, StrategyFamily::full());
  ASSERT_FALSE(v.holds);
  const Certificate& c = *v.witness;
  ASSERT_TRUE(c.agent && c.initial);
  const AgentId i = *c.agent;
  const Strategy& alt = c.strategies.back();
  EXPECT_FALSE(satisfies(two.game, two.game.goals[i.value], profile, *c.initial));
  for (const State& s : oracle::class_of(two.game.initial, i))
    EXPECT_TRUE(satisfies(two.game, two.game.goals[i.value], with(profile, alt), s));
}

TEST(Nash, DeviationClosure) {
  // Swapping in the certified deviation makes that agent's best response hold.
  gen::Rng rng = seeded(19);
  int checked = 0;
  for (int round = 0; round < 60 && checked < 15; ++round) {
    const InfluenceGame g = small_game(rng);
    const StrategyProfile profile = gen::random_profile(rng, g.dims());
    const Verdict v = is_nash(g, profile, StrategyFamily::full());
    if (v.holds) continue;
    ++checked;
    const AgentId i = *v.witness->agent;
    const StrategyProfile next = with(profile, v.witness->strategies.back());
    ASSERT_TRUE(is_best_response(g, i, next[i.value], next, StrategyFamily::full()).holds);
  }
  EXPECT_GT(checked, 0);
}

TEST(Concepts, WinningImpliesDominantImpliesBestResponse) {
  gen::Rng rng = seeded(20);
  for (int round = 0; round < 60; ++round) {
    const InfluenceGame g = small_game(rng);
    const AgentId i{static_cast<std::uint32_t>(round % 2)};
    const StrategyProfile profile = gen::random_profile(rng, g.dims());
    const Strategy& q = profile[i.value];
    const StrategyFamily fam = round % 2 ? StrategyFamily::full() : StrategyFamily::constant();
    const bool win = is_winning(g, i, q, fam, true).holds;
    const bool dom = is_weakly_dominant(g, i, q, fam, true).holds;
    const bool br = is_best_response(g, i, q, profile, fam).holds;
    if (win) ASSERT_TRUE(dom);
    if (dom && fam.kind == FamilyKind::Full) ASSERT_TRUE(br);
  }
}

TEST(Coherence, MatchesOracle) {
  gen::Rng rng = seeded(21);
  for (int round = 0; round < 40; ++round) {
    const InfluenceGame g = small_game(rng);
    const State s0 = gen::random_state(rng, g.dims());
    ASSERT_EQ(is_coherent(g, g.goals[0], s0, StrategyFamily::full()).holds, oracle::coherent_full(g, g.goals[0], s0));
  }
}

TEST(Bounded, TriangleAndDroppedEdge) {
  const Loaded tri = fixture("triangle.json");
  const BoundedResult w = is_winning_bounded(tri.game, A1, tri.profile[0], 6, false);
  EXPECT_EQ(w.status, BoundedStatus::Winning);
  const Loaded de = fixture("dropped_edge.json");
  const BoundedResult l = is_winning_bounded(de.game, A1, de.profile[0], 6, false);
  EXPECT_NE(l.status, BoundedStatus::Winning);
}

TEST(Bounded, SoundOnRandomGames) {
  gen::Rng rng = seeded(22);
  int lost = 0, won = 0;
  for (int round = 0; round < 80; ++round) {
    const InfluenceGame g = small_game(rng);
    const AgentId i{static_cast<std::uint32_t>(round % 2)};
    const Strategy q = gen::random_strategy(rng, i, g.dims());
    const BoundedResult r = is_winning_bounded(g, i, q, 4, true);
    if (r.status == BoundedStatus::Winning) {
      ++won;
      ASSERT_TRUE(oracle::winning_full(g, i, q, true)) << "round " << round;
    }
    if (r.status != BoundedStatus::NotWinning) continue;
    ++lost;
    // The play follows q and the transition function, and every
    // continuation of it falsifies the goal; continue with q and skips.
    const auto adj = oracle::adjacency(g.network);
    std::vector<std::string> rules;
    for (const RulePtr& rule : g.rules) rules.emplace_back(rule->name());
    ASSERT_EQ(r.states.size(), r.actions.size() + 1);
    for (std::size_t t = 0; t < r.actions.size(); ++t) {
      ASSERT_EQ(r.actions[t][i.value], q(r.states[t]));
      ASSERT_EQ(oracle::successor(r.states[t], r.actions[t], adj, rules), r.states[t + 1]);
    }
    const oracle::Policy rest = [&](const State& s) {
      std::vector<Action> joint(2, Action::skip());
      joint[i.value] = q(s);
      return joint;
    };
    const std::size_t window = r.states.size() + 16;
    const TemporalFormula& goal = g.goals[i.value];
    std::vector<State> word(r.states.begin(), r.states.end() - 1);
    const auto tail = oracle::unroll(r.states.back(), rest, adj, rules, (goal.temporal_depth() + 2) * window + goal.size());
    word.insert(word.end(), tail.begin(), tail.end());
    ASSERT_FALSE(oracle::eval_word(goal, word, 0, window)) << "round " << round;
  }
  EXPECT_GT(lost, 0);
  EXPECT_GT(won, 0);
}

TEST(Budget, OversizedFamilyIsRefused) {
  const Loaded tri = fixture("triangle.json");
  AnalysisOptions tight;
  tight.budget = 1000;
  EXPECT_THROW(is_winning(tri.game, A1, tri.profile[0], StrategyFamily::full(), false, tight), BudgetExceeded);
  tight.budget = 1;
  EXPECT_THROW(is_winning(tri.game, A1, tri.profile[0], StrategyFamily::constant(), false, tight), BudgetExceeded);
}

TEST(Budget, SearchCapIsEnforced) {
  // Each constant slot (3 strategies) fits, but deciding dominance visits
  // more than 3 tuples.
  const Loaded tri = fixture("triangle.json");
  AnalysisOptions tight;
  tight.budget = 3;
  EXPECT_THROW(is_weakly_dominant(tri.game, A1, tri.profile[0], StrategyFamily::constant(), true, tight),
               BudgetExceeded);
}
