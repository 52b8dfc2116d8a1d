// influence: command-line front end for games of influence.
//
// Exit codes: 0 yes / SAT / success, 1 no / UNSAT, 2 input or usage error,
// 3 budget exceeded.

#include <cstdlib>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "influence/evaluator.hpp"
#include "influence/game_analysis.hpp"
#include "influence/game_io.hpp"
#include "influence/ltl_encoding.hpp"
#include "influence/parser.hpp"
#include "influence/reduction.hpp"

using namespace influence;
using nlohmann::json;

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;
constexpr int kBudget = 3;

struct Loaded {
  InfluenceGame game;
  StrategyFile strategies;
};

Loaded load(const std::string& game_path, const std::string& strategy_path) {
  const std::string text = read_file(game_path);
  Loaded out{parse_game(text, game_path), {}};
  out.strategies = strategy_path.empty() ? embedded_strategies(text, out.game, game_path)
                                         : load_strategies(strategy_path, out.game);
  return out;
}

AgentId agent_arg(const InfluenceGame& game, const std::string& name) {
  if (auto a = game.vocab.find_agent(name)) return *a;
  throw InputError("--agent: unknown agent '" + name + "'");
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("INFLUENCE_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError("INFLUENCE_BUDGET: not a number: '" + std::string(env) + "'");
    }
  }
  return AnalysisOptions{}.budget;
}

struct AnalysisArgs {
  std::string game, strategies, family;
  std::uint64_t budget = 0;
  unsigned threads = 1;
  bool exhaustive = false;
  int horizon = -1;
};

void add_analysis_options(CLI::App* cmd, AnalysisArgs& a) {
  cmd->add_option("game", a.game, "game file (JSON)")->required();
  cmd->add_option("-s,--strategies", a.strategies, "strategy file; defaults to the game's own \"strategies\"");
  cmd->add_option("--family", a.family, "constant | full | reachable | table");
  cmd->add_option("--budget", a.budget, "cap on strategies per quantified agent and on search evaluations (env INFLUENCE_BUDGET)");
  cmd->add_option("--threads", a.threads, "worker threads for --exhaustive")->check(CLI::Range(1u, 256u));
  cmd->add_flag("--exhaustive", a.exhaustive, "enumerate every candidate tuple instead of the lazy search");
  cmd->add_option("--horizon", a.horizon, "also run the adversarial check to this many steps");
}

StrategyFamily family_of(const AnalysisArgs& a, const StrategyFile& strategies) {
  if (a.family.empty()) {
    std::cerr << "warning: no --family given, deciding over constant strategies only\n";
    return StrategyFamily::constant();
  }
  const auto kind = parse_family(a.family);
  if (!kind) throw InputError("--family: expected constant, full, reachable or table, got '" + a.family + "'");
  if (*kind == FamilyKind::Table) return StrategyFamily::table(strategies.alternatives);
  return {*kind, {}};
}

AnalysisOptions options_of(const AnalysisArgs& a) {
  AnalysisOptions o;
  o.budget = a.budget ? a.budget : default_budget();
  o.exhaustive = a.exhaustive;
  o.threads = a.threads;
  return o;
}

json bounded_json(const BoundedResult& r, const InfluenceGame& game) {
  json out;
  out["status"] = r.status == BoundedStatus::Winning      ? "winning"
                  : r.status == BoundedStatus::NotWinning ? "not winning"
                                                          : "undetermined";
  out["method"] = r.method;
  out["nodes"] = r.nodes;
  if (!r.states.empty()) {
    json play = json::array();
    for (std::size_t t = 0; t < r.states.size(); ++t)
      play.push_back(format_trace_line(t, r.states[t], t < r.actions.size() ? r.actions[t] : JointAction{}, game.vocab));
    out["counterplay"] = play;
  }
  return out;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_simulate(const std::string& game_path, const std::string& strategy_path, int steps, bool show_lasso) {
  const Loaded in = load(game_path, strategy_path);
  const InfluenceGame& g = in.game;
  const Lasso lasso = induced_lasso(g.initial, in.strategies.profile, g.network, g.rules);
  const std::size_t last = steps >= 0 ? static_cast<std::size_t>(steps) : lasso.size() - 1;
  for (std::size_t t = 0; t <= last; ++t) {
    const bool final_line = steps >= 0 && t == last;
    std::cout << format_trace_line(t, lasso.at(t), final_line ? JointAction{} : lasso.actions[lasso.position(t)],
                                   g.vocab)
              << "\n";
  }
  if (show_lasso)
    std::cout << "lasso: prefix " << lasso.prefix_length() << ", cycle " << lasso.cycle_length() << " (t="
              << lasso.size() << " returns to t=" << lasso.cycle_start << ")\n";
  return kYes;
}

int cmd_check(const std::string& game_path, const std::string& strategy_path, const std::string& text) {
  Loaded in = load(game_path, strategy_path);
  InfluenceGame& g = in.game;
  TemporalFormula phi;
  try {
    phi = parse_formula(text, g.vocab);
  } catch (const ParseError& e) {
    throw InputError(std::string("formula: ") + e.what());
  }
  const Lasso lasso = induced_lasso(g.initial, in.strategies.profile, g.network, g.rules);
  const bool sat = eval(phi, lasso, 0);
  std::cout << (sat ? "SAT" : "UNSAT") << "\n";
  return sat ? kYes : kNo;
}

int cmd_reduce(const std::string& text, const std::string& game_path) {
  Vocabulary vocab = game_path.empty() ? Vocabulary::open() : load_game(game_path).vocab;
  TemporalFormula phi;
  try {
    phi = parse_formula(text, vocab);
  } catch (const ParseError& e) {
    throw InputError(std::string("formula: ") + e.what());
  }
  std::cout << to_string(reduce(phi), vocab) << "\n";
  return kYes;
}

int cmd_encode(const std::string& game_path, const std::string& strategy_path, std::uint64_t max_states) {
  const std::string text = read_file(game_path);
  const InfluenceGame g = parse_game(text, game_path);
  const Dimensions d = g.dims();
  StateSpaceGuard guard{max_states};
  guard.check(d);
  const PropositionTable table(g.vocab);
  std::cout << "# propositions\n" << table.sidecar(g.vocab);
  std::cout << "# transition\n" << export_formula(encode_transition(g.network, d), table) << "\n";
  const StrategyFile strategies =
      strategy_path.empty() ? embedded_strategies(text, g, game_path) : load_strategies(strategy_path, g);
  std::vector<std::function<Action(const State&)>> profile(strategies.profile.begin(), strategies.profile.end());
  std::cout << "# strategies\n" << export_formula(encode_profile(d, profile, guard), table) << "\n";
  return kYes;
}

int cmd_winning(const AnalysisArgs& a, const std::string& agent, bool uniform, bool dominant) {
  const Loaded in = load(a.game, a.strategies);
  const InfluenceGame& g = in.game;
  const AgentId i = agent_arg(g, agent);
  const StrategyFamily family = family_of(a, in.strategies);
  const AnalysisOptions options = options_of(a);
  const Strategy& q = in.strategies.profile[i.value];
  const Verdict v = dominant ? is_weakly_dominant(g, i, q, family, uniform, options)
                             : is_winning(g, i, q, family, uniform, options);
  json out = verdict_to_json(v, g, dominant ? "weakly dominant" : "winning");
  out["agent"] = agent;
  out["strategy"] = strategy_to_json(q, g);
  out["uniform"] = uniform;
  out["budget"] = options.budget;
  if (a.horizon >= 0 && !dominant)
    out["adversary"] = bounded_json(is_winning_bounded(g, i, q, a.horizon, uniform, options), g);
  print(out);
  return v.holds ? kYes : kNo;
}

int cmd_nash(const AnalysisArgs& a) {
  const Loaded in = load(a.game, a.strategies);
  const InfluenceGame& g = in.game;
  const StrategyFamily family = family_of(a, in.strategies);
  const AnalysisOptions options = options_of(a);
  const Verdict v = is_nash(g, in.strategies.profile, family, options);
  json out = verdict_to_json(v, g, "nash");
  out["budget"] = options.budget;
  bool holds = v.holds;
  // The probe widens the deviations to observation-dependent plans; a plan
  // that beats Q_i turns the verdict into "no".
  if (a.horizon >= 0 && v.holds) {
    json probes = json::array();
    for (std::uint32_t i = 0; i < g.dims().agents; ++i) {
      const ProbeResult p = deviation_probe(g, in.strategies.profile, AgentId{i}, a.horizon);
      json r = {{"agent", g.vocab.agent_name(AgentId{i})},
                {"deviation_found", p.deviation_found},
                {"already_winning", p.already_winning},
                {"nodes", p.nodes}};
      if (p.deviation_found) {
        r["plan"] = p.plan;
        holds = false;
      }
      probes.push_back(r);
    }
    out["probe"] = probes;
    out["horizon"] = a.horizon;
    out["verdict"] = holds ? "yes" : "no";
  }
  print(out);
  return holds ? kYes : kNo;
}

// A random game over the given sizes. Goals are drawn from a few
// consensus-style templates so generated games are immediately analysable.
int cmd_generate(std::uint64_t seed, std::uint32_t n, std::uint32_t m, double edge_prob) {
  Dimensions{n, m}.validate();
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5), edge(edge_prob);
  json g;
  std::vector<std::string> agents, issues;
  for (std::uint32_t i = 0; i < n; ++i) agents.push_back("a" + std::to_string(i + 1));
  for (std::uint32_t p = 0; p < m; ++p) issues.push_back(m == 1 ? "p" : "p" + std::to_string(p + 1));
  g["agents"] = agents;
  g["issues"] = issues;
  json edges = json::array(), beliefs = json::array(), vis = json::array(), goals = json::object();
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      if (i != j && edge(rng)) edges.push_back({agents[i], agents[j]});
  for (std::uint32_t i = 0; i < n; ++i) {
    json b = json::array(), v = json::array();
    for (std::uint32_t p = 0; p < m; ++p) {
      b.push_back(coin(rng) ? 1 : 0);
      v.push_back(coin(rng) ? 1 : 0);
    }
    beliefs.push_back(b);
    vis.push_back(v);
  }
  std::uniform_int_distribution<std::uint32_t> pick_agent(0, n - 1), pick_issue(0, m - 1), pick_template(0, 3);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::string other = agents[pick_agent(rng)];
    const std::string atom = "B[" + other + "," + issues[pick_issue(rng)] + "]";
    switch (pick_template(rng)) {
      case 0: goals[agents[i]] = "F " + atom; break;
      case 1: goals[agents[i]] = "F G " + atom; break;
      case 2: goals[agents[i]] = "X " + atom; break;
      default: goals[agents[i]] = "G !" + atom; break;
    }
  }
  g["edges"] = edges;
  g["beliefs"] = beliefs;
  g["visibility"] = vis;
  g["goals"] = goals;
  g["aggregation"] = "unanimous";
  print(g);
  return kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Games of influence: simulation, goal checking and equilibrium analysis"};
  app.require_subcommand(1);

  std::string game, strategies, formula;
  int steps = -1;
  bool show_lasso = false;
  auto* simulate = app.add_subcommand("simulate", "print the history induced by the strategies");
  simulate->add_option("game", game, "game file (JSON)")->required();
  simulate->add_option("-s,--strategies", strategies, "strategy file");
  simulate->add_option("--steps", steps, "print exactly this many transitions")->check(CLI::NonNegativeNumber);
  simulate->add_flag("--lasso", show_lasso, "print the prefix and cycle lengths");

  auto* check = app.add_subcommand("check", "evaluate a formula at time 0 of the induced history");
  check->add_option("game", game, "game file (JSON)")->required();
  check->add_option("formula", formula, "ELTL formula")->required();
  check->add_option("-s,--strategies", strategies, "strategy file");

  auto* reduce_cmd = app.add_subcommand("reduce", "rewrite a formula without knowledge operators");
  reduce_cmd->add_option("formula", formula, "ELTL formula")->required();
  reduce_cmd->add_option("-g,--game", game, "take agent and issue names from this game");

  std::uint64_t max_states = std::uint64_t{1} << 16;
  auto* encode = app.add_subcommand("encode", "export the transition and strategy encodings as LTL");
  encode->add_option("game", game, "game file (JSON)")->required();
  encode->add_option("-s,--strategies", strategies, "strategy file");
  encode->add_option("--max-states", max_states, "refuse games with more states than this");

  AnalysisArgs args;
  std::string agent;
  bool uniform = false;
  auto* nash = app.add_subcommand("nash", "is the strategy profile a Nash equilibrium?");
  add_analysis_options(nash, args);
  auto* winning = app.add_subcommand("winning", "is the agent's strategy winning?");
  add_analysis_options(winning, args);
  winning->add_option("--agent", agent, "agent name")->required();
  winning->add_flag("--uniform", uniform, "quantify over the agent's whole initial information class");
  auto* dominant = app.add_subcommand("dominant", "is the agent's strategy weakly dominant?");
  add_analysis_options(dominant, args);
  dominant->add_option("--agent", agent, "agent name")->required();
  dominant->add_flag("--uniform", uniform, "quantify over the agent's whole initial information class");

  auto* dot = app.add_subcommand("dot", "print the influence network in DOT");
  dot->add_option("game", game, "game file (JSON)")->required();

  std::uint64_t seed = 1;
  std::uint32_t n = 3, m = 1;
  double edge_prob = 0.5;
  auto* generate = app.add_subcommand("generate", "print a random game");
  generate->add_option("--seed", seed, "random seed");
  generate->add_option("--agents", n, "number of agents")->check(CLI::PositiveNumber);
  generate->add_option("--issues", m, "number of issues")->check(CLI::PositiveNumber);
  generate->add_option("--edge-prob", edge_prob, "probability of each edge")->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*simulate) return cmd_simulate(game, strategies, steps, show_lasso);
    if (*check) return cmd_check(game, strategies, formula);
    if (*reduce_cmd) return cmd_reduce(formula, game);
    if (*encode) return cmd_encode(game, strategies, max_states);
    if (*nash) return cmd_nash(args);
    if (*winning) return cmd_winning(args, agent, uniform, false);
    if (*dominant) return cmd_winning(args, agent, uniform, true);
    if (*dot) {
      std::cout << to_dot(load_game(game));
      return kYes;
    }
    if (*generate) return cmd_generate(seed, n, m, edge_prob);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
