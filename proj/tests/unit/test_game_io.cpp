#include <gtest/gtest.h>

#include "influence/game_io.hpp"
#include "random.hpp"

using namespace influence;

namespace {

const char* kFanIn = R"j({
  "agents": ["i", "j", "k"],
  "issues": ["p"],
  "edges": [["j", "i"], ["k", "i"]],
  "beliefs": [[0], [1], [1]],
  "visibility": [[1], [1], [0]],
  "goals": {"k": "F K[k] (B[i,p] & V[i,p])"}
})j";

// The error text for a game produced by replacing `from` with `to` in the fan-in game.
std::string error_for(const std::string& from, const std::string& to) {
  std::string text = kFanIn;
  const auto at = text.find(from);
  if (at == std::string::npos) return "pattern not found: " + from;
  text.replace(at, from.size(), to);
  try {
    parse_game(text, "fan_in.json");
  } catch (const InputError& e) {
    return e.what();
  }
  return "no error";
}

bool same_on_all_states(const Strategy& a, const Strategy& b, Dimensions d) {
  bool same = true;
  for_each_state(d, [&](const State& s) { same = same && a(s) == b(s); });
  return same;
}

}  // namespace

TEST(GameIo, ParsesFanIn) {
  const InfluenceGame g = parse_game(kFanIn, "fan_in.json");
  EXPECT_EQ(g.dims().agents, 3u);
  EXPECT_EQ(g.dims().issues, 1u);
  EXPECT_TRUE(g.network.has_edge(AgentId{1}, AgentId{0}));
  EXPECT_FALSE(g.network.has_edge(AgentId{0}, AgentId{1}));
  EXPECT_EQ(g.initial.code(), State::from_rows(g.dims(), {{0}, {1}, {1}}, {{1}, {1}, {0}}).code());
  EXPECT_EQ(to_string(g.goals[0], g.vocab), "true");
  EXPECT_EQ(to_string(g.goals[2], g.vocab), "F K[k] (B[i,p] & V[i,p])");
  for (const RulePtr& r : g.rules) EXPECT_EQ(r->name(), "unanimous");
}

TEST(GameIo, ErrorsNameTheSourceAndField) {
  EXPECT_EQ(error_for(R"j("agents": ["i", "j", "k"],)j", ""), R"j(fan_in.json: missing "agents")j");
  EXPECT_EQ(error_for(R"j(["k", "i"])j", R"j(["k", "x"])j"), "fan_in.json: edges[1]: unknown agent 'x'");
  EXPECT_NE(error_for("[[0], [1], [1]]", "[[0], [1]]").find("fan_in.json: beliefs"), std::string::npos);
  EXPECT_NE(error_for("[[1], [1], [0]]", "[[1], [2], [0]]").find("fan_in.json: visibility"), std::string::npos);
  const std::string goal = error_for("F K[k] (B[i,p] & V[i,p])", "F K[k] X B[i,p]");
  EXPECT_EQ(goal.rfind("fan_in.json: goals.k", 0), 0u) << goal;
  EXPECT_NE(goal.find("position 7"), std::string::npos) << goal;
  EXPECT_NE(error_for(R"j("goals")j", R"j("aggregation": "plurality", "goals")j").find("unknown aggregation 'plurality'"),
            std::string::npos);
  EXPECT_NE(error_for("{", "[").find("fan_in.json: invalid JSON"), std::string::npos);
}

TEST(GameIo, PerAgentAggregation) {
  std::string text = kFanIn;
  text.insert(text.rfind('}'), R"j(, "aggregation": {"i": "majority"})j");
  const InfluenceGame g = parse_game(text, "t");
  EXPECT_EQ(g.rules[0]->name(), "majority");
  EXPECT_EQ(g.rules[1]->name(), "unanimous");
}

TEST(GameIo, StrategiesAllForms) {
  const InfluenceGame g = parse_game(kFanIn, "fan_in.json");
  const StrategyFile f = parse_strategies(R"j({
    "strategies": {
      "i": "reveal p",
      "j": {"rules": [{"if": "B[j,p]", "then": "hide p"}], "else": "reveal p"},
      "k": {"table": [{"class": "(0,1,1)/(1,1,0)", "then": "reveal p"}], "else": "skip"}
    },
    "alternatives": {"j": ["skip", "hide p"]}
  })j", g);
  ASSERT_EQ(f.profile.size(), 3u);
  EXPECT_EQ(f.profile[0].kind(), Strategy::Kind::Constant);
  EXPECT_EQ(f.profile[1](g.initial), Action::hide(IssueId{0}));
  EXPECT_EQ(f.profile[2](g.initial), Action::reveal(IssueId{0}));
  EXPECT_EQ(f.alternatives[1].size(), 2u);
  EXPECT_TRUE(f.alternatives[0].empty());

  // Agents that are not listed play skip.
  const StrategyFile empty = parse_strategies("{}", g);
  for (const Strategy& q : empty.profile) EXPECT_EQ(q(g.initial), Action::skip());
}

TEST(GameIo, StrategyErrors) {
  const InfluenceGame g = parse_game(kFanIn, "fan_in.json");
  auto error = [&](const std::string& text) {
    try {
      parse_strategies(text, g, "s.json");
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_EQ(error(R"j({"strategies": {"x": "skip"}})j"), "s.json: strategies.x: unknown agent 'x'");
  EXPECT_EQ(error(R"j({"strategies": {"i": "shout p"}})j"), "s.json: strategies.i: invalid action 'shout p'");
  EXPECT_NE(error(R"j({"strategies": {"k": {"table": [{"class": "(0,1)/(1,1,0)", "then": "skip"}]}}})j")
                .find("s.json: strategies.k.table[0].class"),
            std::string::npos);
  EXPECT_NE(error(R"j({"strategies": {"j": {"rules": [{"if": "B[j,", "then": "skip"}]}}})j")
                .find("s.json: strategies.j.rules[0].if"),
            std::string::npos);
}

TEST(GameIo, StrategyJsonRoundTrip) {
  gen::Rng rng(31);
  for (int round = 0; round < 100; ++round) {
    const InfluenceGame g = gen::random_game(rng, 2 + round % 2, 1 + round % 2);
    const AgentId i{static_cast<std::uint32_t>(round % g.dims().agents)};
    const Strategy q = gen::random_strategy(rng, i, g.dims());
    const Strategy back = parse_strategy(strategy_to_json(q, g), i, g, "round-trip");
    ASSERT_TRUE(same_on_all_states(q, back, g.dims())) << strategy_to_json(q, g).dump();
  }
}

TEST(GameIo, VerdictJson) {
  const InfluenceGame g = parse_game(kFanIn, "fan_in.json");
  Verdict v;
  v.holds = false;
  v.family = FamilyKind::Constant;
  v.family_size = 9;
  v.evaluations = 4;
  v.witness = Certificate{AgentId{1}, {Strategy::constant(AgentId{1}, Action::hide(IssueId{0}))}, g.initial};
  const nlohmann::json j = verdict_to_json(v, g, "nash");
  EXPECT_EQ(j["question"], "nash");
  EXPECT_EQ(j["verdict"], "no");
  EXPECT_EQ(j["family"], "constant");
  EXPECT_EQ(j["witness"]["agent"], "j");
  EXPECT_EQ(j["witness"]["strategies"]["j"], "hide p");
  EXPECT_EQ(j["witness"]["initial"], "((0,1,1),(1,1,0))");
}

TEST(GameIo, DotListsEachEdgeOnce) {
  std::string text = kFanIn;
  text.replace(text.find(R"j([["j", "i"], ["k", "i"]])j"), 24, R"j([["j", "i"], ["k", "i"], ["j", "i"]])j");
  const std::string dot = to_dot(parse_game(text, "t"));
  EXPECT_EQ(dot,
            "digraph influence {\n"
            "  \"i\";\n  \"j\";\n  \"k\";\n"
            "  \"j\" -> \"i\";\n  \"k\" -> \"i\";\n"
            "}\n");
}
