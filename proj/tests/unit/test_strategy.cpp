#include <gtest/gtest.h>

#include <set>

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

}  // namespace

TEST(ClassKey, HiddenOpinionSharesAClass) {
  const State s0 = s3({0, 1, 0}, {1, 1, 0});
  const State s1 = s3({0, 1, 1}, {1, 1, 0});
  EXPECT_EQ(class_key(s0, I), class_key(s1, I));
  EXPECT_NE(class_key(s0, K), class_key(s1, K));
}

TEST(ClassKey, EqualKeysIffIndistinguishable) {
  for (Dimensions d : {Dimensions{3, 1}, Dimensions{2, 2}}) {
    const std::vector<State> all = oracle::all_states(d);
    for (std::uint32_t a = 0; a < d.agents; ++a)
      for (const State& s : all)
        for (const State& t : all)
          ASSERT_EQ(class_key(s, AgentId{a}) == class_key(t, AgentId{a}), oracle::indistinguishable(s, t, AgentId{a}));
  }
}

TEST(ClassIndex, DenseAndConsistent) {
  EXPECT_EQ(class_count(Dimensions{2, 1}), 12u);
  EXPECT_EQ(class_count(Dimensions{3, 1}), 36u);
  EXPECT_EQ(class_count(Dimensions{2, 2}), 144u);
  for (Dimensions d : {Dimensions{2, 1}, Dimensions{3, 1}, Dimensions{2, 2}}) {
    for (std::uint32_t a = 0; a < d.agents; ++a) {
      const AgentId i{a};
      std::set<std::uint64_t> seen;
      for_each_state(d, [&](const State& s) {
        const std::uint64_t k = class_index(s, i);
        ASSERT_LT(k, class_count(d));
        seen.insert(k);
        ASSERT_TRUE(indistinguishable(class_representative(d, i, k), s, i));
      });
      EXPECT_EQ(seen.size(), class_count(d));
      for (std::uint64_t k = 0; k < class_count(d); ++k) EXPECT_EQ(class_index(class_representative(d, i, k), i), k);
    }
  }
}

TEST(ClassFormat, RoundTrip) {
  const Dimensions d{3, 2};
  gen::Rng rng(2);
  for (int k = 0; k < 200; ++k) {
    const State s = gen::random_state(rng, d);
    const AgentId i{static_cast<std::uint32_t>(k % 3)};
    const ClassKey key = class_key(s, i);
    EXPECT_EQ(parse_class(format_class(d, i, key), d, i), key);
  }
  EXPECT_EQ(format_class(kThree, K, class_key(s3({0, 1, 1}, {1, 1, 0}), K)), "(0,1,1)/(1,1,0)");
  EXPECT_EQ(format_class(kThree, I, class_key(s3({0, 1, 1}, {1, 1, 0}), I)), "(0,1,?)/(1,1,0)");
  EXPECT_THROW(parse_class("(0,1,1)/(1,1,0)", kThree, I), std::invalid_argument);
  EXPECT_THROW(parse_class("(0,1)/(1,1)", kThree, I), std::invalid_argument);
  EXPECT_THROW(parse_class("(0,1,?)", kThree, I), std::invalid_argument);
}

TEST(Strategy, EveryFormIsUniform) {
  gen::Rng rng(4);
  const Dimensions d{3, 1};
  for (int k = 0; k < 50; ++k) {
    const AgentId i{static_cast<std::uint32_t>(k % 3)};
    const Strategy q = gen::random_strategy(rng, i, d);
    for_each_state(d, [&](const State& s) {
      for (const State& t : indistinguishability_class(s, i)) ASSERT_EQ(q(s), q(t));
    });
  }
}

TEST(Strategy, RulesTestKnowledge) {
  // "if B[k,p] then reveal p": i only acts when it knows k believes p.
  const Strategy q = Strategy::rules(I, {{belief_atom(K, P), Action::reveal(P)}}, Action::skip());
  EXPECT_EQ(q(s3({0, 0, 1}, {0, 0, 1})), Action::reveal(P));
  EXPECT_EQ(q(s3({0, 0, 1}, {0, 0, 0})), Action::skip());
}

TEST(Strategy, TableAndFallback) {
  const State h0 = s3({0, 1, 1}, {1, 1, 0});
  const Strategy q = Strategy::table(K, kThree, {{class_key(h0, K).code(kThree), Action::reveal(P)}}, Action::skip());
  EXPECT_EQ(q(h0), Action::reveal(P));
  EXPECT_EQ(q(s3({1, 1, 1}, {1, 1, 1})), Action::skip());
  const Vocabulary v({"i", "j", "k"}, {"p"});
  EXPECT_EQ(q.describe(v), "(0,1,1)/(1,1,0) reveal p; else skip");
}

TEST(Strategy, ConsensusStrategy) {
  const Strategy plus = consensus_strategy(I, false);
  const Strategy minus = consensus_strategy(I, true);
  EXPECT_EQ(plus(s3({1, 0, 0}, {0, 0, 0})), Action::reveal(P));
  EXPECT_EQ(plus(s3({0, 0, 0}, {0, 0, 0})), Action::hide(P));
  EXPECT_EQ(minus(s3({1, 0, 0}, {0, 0, 0})), Action::hide(P));
  EXPECT_EQ(minus(s3({0, 0, 0}, {0, 0, 0})), Action::reveal(P));
}

TEST(Strategy, DenseNeedsOneActionPerClass) {
  EXPECT_THROW(Strategy::dense(I, Dimensions{2, 1}, std::vector<Action>(11)), std::invalid_argument);
  EXPECT_NO_THROW(Strategy::dense(I, Dimensions{2, 1}, std::vector<Action>(12)));
}
