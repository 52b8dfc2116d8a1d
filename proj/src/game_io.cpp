#include "influence/game_io.hpp"

#include <fstream>
#include <sstream>

#include "influence/parser.hpp"

namespace influence {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

json parse_json(std::string_view text, const std::string& source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(source + ": invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

[[noreturn]] void fail(const std::string& where, const std::string& msg) { throw InputError(where + ": " + msg); }

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing \"") + key + "\"");
  return *it;
}

std::vector<std::string> names(const json& arr, const std::string& where) {
  if (!arr.is_array()) fail(where, "expected an array of names");
  std::vector<std::string> out;
  for (const json& n : arr) {
    if (!n.is_string()) fail(where, "names must be strings");
    out.push_back(n.get<std::string>());
  }
  return out;
}

std::vector<std::vector<int>> matrix(const json& arr, const std::string& where) {
  if (!arr.is_array()) fail(where, "expected an array of rows");
  std::vector<std::vector<int>> out;
  for (const json& row : arr) {
    if (!row.is_array()) fail(where, "each row must be an array");
    std::vector<int> r;
    for (const json& v : row) {
      if (!v.is_number_integer()) fail(where, "entries must be 0 or 1");
      r.push_back(v.get<int>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

AgentId agent_named(const InfluenceGame& game, const std::string& name, const std::string& where) {
  if (auto a = game.vocab.find_agent(name)) return *a;
  fail(where, "unknown agent '" + name + "'");
}

Action action_from(const json& v, const InfluenceGame& game, const std::string& where) {
  if (!v.is_string()) fail(where, "an action must be a string such as \"reveal p\"");
  if (auto a = parse_action(v.get<std::string>(), game.vocab)) return *a;
  fail(where, "invalid action '" + v.get<std::string>() + "'");
}

}  // namespace

InfluenceGame parse_game(std::string_view text, const std::string& source) {
  const json doc = parse_json(text, source);
  if (!doc.is_object()) fail(source, "a game file is a JSON object");
  InfluenceGame game;
  try {
    game.vocab = Vocabulary(names(member(doc, "agents", source), source + ": agents"),
                            names(member(doc, "issues", source), source + ": issues"));
  } catch (const std::invalid_argument& e) {
    fail(source, e.what());
  }
  const Dimensions d = game.vocab.dims();
  try {
    d.validate();
  } catch (const std::invalid_argument& e) {
    fail(source, e.what());
  }

  std::vector<std::pair<AgentId, AgentId>> edges;
  if (doc.contains("edges")) {
    const json& arr = doc["edges"];
    if (!arr.is_array()) fail(source + ": edges", "expected an array of [from, to] pairs");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const std::string where = source + ": edges[" + std::to_string(k) + "]";
      const json& e = arr[k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
        fail(where, "expected [from, to]");
      edges.emplace_back(agent_named(game, e[0], where), agent_named(game, e[1], where));
    }
  }
  try {
    game.network = InfluenceNetwork(d.agents, edges);
  } catch (const std::invalid_argument& e) {
    fail(source + ": edges", e.what());
  }

  auto cells = [&](const char* key) {
    const std::string where = source + ": " + key;
    auto rows = matrix(member(doc, key, source), where);
    if (rows.size() != d.agents) fail(where, "expected one row per agent");
    for (const auto& row : rows) {
      if (row.size() != d.issues) fail(where, "expected one entry per issue in each row");
      for (int v : row)
        if (v != 0 && v != 1) fail(where, "entries must be 0 or 1");
    }
    return rows;
  };
  game.initial = State::from_rows(d, cells("beliefs"), cells("visibility"));

  game.rules.assign(d.agents, unanimous_rule());
  if (doc.contains("aggregation")) {
    const json& agg = doc["aggregation"];
    auto rule = [&](const json& v, const std::string& where) {
      if (!v.is_string()) fail(where, "expected \"unanimous\" or \"majority\"");
      RulePtr r = rule_by_name(v.get<std::string>());
      if (!r) fail(where, "unknown aggregation '" + v.get<std::string>() + "'");
      return r;
    };
    if (agg.is_object()) {
      for (const auto& [name, v] : agg.items()) {
        const std::string where = source + ": aggregation." + name;
        game.rules[agent_named(game, name, where).value] = rule(v, where);
      }
    } else {
      game.rules.assign(d.agents, rule(agg, source + ": aggregation"));
    }
  }

  game.goals.assign(d.agents, lift(state_constant(true)));
  if (doc.contains("goals")) {
    const json& goals = doc["goals"];
    if (!goals.is_object()) fail(source + ": goals", "expected an object keyed by agent name");
    for (const auto& [name, v] : goals.items()) {
      const std::string where = source + ": goals." + name;
      const AgentId i = agent_named(game, name, where);
      if (!v.is_string()) fail(where, "a goal is a formula string");
      try {
        game.goals[i.value] = parse_formula(v.get<std::string>(), game.vocab);
      } catch (const ParseError& e) {
        fail(where, e.what());
      }
    }
  }
  return game;
}

InfluenceGame load_game(const std::string& path) { return parse_game(read_file(path), path); }

Strategy parse_strategy(const json& spec, AgentId i, const InfluenceGame& game, const std::string& where) {
  if (spec.is_string()) return Strategy::constant(i, action_from(spec, game, where));
  if (!spec.is_object()) fail(where, "a strategy is an action string or an object with \"rules\" or \"table\"");
  Action otherwise = Action::skip();
  if (spec.contains("else")) otherwise = action_from(spec["else"], game, where + ".else");
  if (spec.contains("rules")) {
    const json& rules = spec["rules"];
    if (!rules.is_array()) fail(where + ".rules", "expected an array");
    std::vector<Strategy::Rule> out;
    for (std::size_t k = 0; k < rules.size(); ++k) {
      const std::string at = where + ".rules[" + std::to_string(k) + "]";
      const json& cond = member(rules[k], "if", at);
      if (!cond.is_string()) fail(at + ".if", "a condition is a state formula string");
      Vocabulary vocab = game.vocab;
      StateFormula c;
      try {
        c = parse_state_formula(cond.get<std::string>(), vocab);
      } catch (const ParseError& e) {
        fail(at + ".if", e.what());
      }
      out.push_back({c, action_from(member(rules[k], "then", at), game, at + ".then")});
    }
    return Strategy::rules(i, std::move(out), otherwise);
  }
  if (spec.contains("table")) {
    const json& table = spec["table"];
    if (!table.is_array()) fail(where + ".table", "expected an array");
    const Dimensions d = game.dims();
    std::map<std::uint64_t, Action> entries;
    for (std::size_t k = 0; k < table.size(); ++k) {
      const std::string at = where + ".table[" + std::to_string(k) + "]";
      const json& cls = member(table[k], "class", at);
      if (!cls.is_string()) fail(at + ".class", "expected a class string such as \"(1,?)/(1,0)\"");
      ClassKey key;
      try {
        key = parse_class(cls.get<std::string>(), d, i);
      } catch (const std::invalid_argument& e) {
        fail(at + ".class", e.what());
      }
      if (!entries.emplace(key.code(d), action_from(member(table[k], "then", at), game, at + ".then")).second)
        fail(at, "class listed twice");
    }
    return Strategy::table(i, d, std::move(entries), otherwise);
  }
  if (spec.contains("else")) return Strategy::constant(i, otherwise);
  fail(where, "expected \"rules\", \"table\" or \"else\"");
}

StrategyFile strategies_from_json(const json& doc, const InfluenceGame& game, const std::string& source) {
  const Dimensions d = game.dims();
  StrategyFile out;
  for (std::uint32_t i = 0; i < d.agents; ++i) out.profile.push_back(Strategy::constant(AgentId{i}, Action::skip()));
  out.alternatives.resize(d.agents);
  if (!doc.is_object()) fail(source, "a strategy file is a JSON object");
  if (doc.contains("strategies")) {
    const json& strategies = doc["strategies"];
    if (!strategies.is_object()) fail(source + ": strategies", "expected an object keyed by agent name");
    for (const auto& [name, spec] : strategies.items()) {
      const std::string where = source + ": strategies." + name;
      const AgentId i = agent_named(game, name, where);
      out.profile[i.value] = parse_strategy(spec, i, game, where);
    }
  }
  if (doc.contains("alternatives")) {
    const json& alts = doc["alternatives"];
    if (!alts.is_object()) fail(source + ": alternatives", "expected an object keyed by agent name");
    for (const auto& [name, list] : alts.items()) {
      const std::string where = source + ": alternatives." + name;
      const AgentId i = agent_named(game, name, where);
      if (!list.is_array()) fail(where, "expected an array of strategies");
      for (std::size_t k = 0; k < list.size(); ++k)
        out.alternatives[i.value].push_back(parse_strategy(list[k], i, game, where + "[" + std::to_string(k) + "]"));
    }
  }
  return out;
}

StrategyFile parse_strategies(std::string_view text, const InfluenceGame& game, const std::string& source) {
  return strategies_from_json(parse_json(text, source), game, source);
}

StrategyFile load_strategies(const std::string& path, const InfluenceGame& game) {
  return parse_strategies(read_file(path), game, path);
}

StrategyFile embedded_strategies(std::string_view game_text, const InfluenceGame& game, const std::string& source) {
  const json doc = parse_json(game_text, source);
  json sub = json::object();
  if (doc.contains("strategies")) sub["strategies"] = doc["strategies"];
  if (doc.contains("alternatives")) sub["alternatives"] = doc["alternatives"];
  return strategies_from_json(sub, game, source);
}

json strategy_to_json(const Strategy& q, const InfluenceGame& game) {
  const Dimensions d = game.dims();
  auto act = [&](Action a) { return to_string(a, game.vocab); };
  switch (q.kind()) {
    case Strategy::Kind::Constant: return act(q.fallback());
    case Strategy::Kind::Rules: {
      json rules = json::array();
      for (const Strategy::Rule& r : q.rule_list())
        rules.push_back({{"if", to_string(r.condition, game.vocab)}, {"then", act(r.action)}});
      return {{"rules", rules}, {"else", act(q.fallback())}};
    }
    case Strategy::Kind::Table: {
      json table = json::array();
      for (const auto& [code, a] : q.table_entries())
        table.push_back({{"class", format_class(d, q.agent(), class_key(State::from_code(d, code), q.agent()))},
                         {"then", act(a)}});
      return {{"table", table}, {"else", act(q.fallback())}};
    }
    case Strategy::Kind::Dense: {
      json table = json::array();
      for (std::uint64_t k = 0; k < class_count(d); ++k) {
        const State rep = class_representative(d, q.agent(), k);
        table.push_back({{"class", format_class(d, q.agent(), class_key(rep, q.agent()))}, {"then", act(q(rep))}});
      }
      return {{"table", table}, {"else", "skip"}};
    }
  }
  return "skip";
}

json verdict_to_json(const Verdict& v, const InfluenceGame& game, std::string_view question) {
  json out;
  out["question"] = std::string(question);
  out["verdict"] = v.holds ? "yes" : "no";
  out["family"] = std::string(to_string(v.family));
  out["family_size"] = v.family_size;
  out["evaluations"] = v.evaluations;
  if (v.witness) {
    json w;
    if (v.witness->agent) w["agent"] = game.vocab.agent_name(*v.witness->agent);
    json strategies = json::object();
    for (const Strategy& q : v.witness->strategies)
      strategies[game.vocab.agent_name(q.agent())] = strategy_to_json(q, game);
    w["strategies"] = strategies;
    if (v.witness->initial) w["initial"] = format_state(*v.witness->initial);
    out["witness"] = w;
  }
  return out;
}

std::string to_dot(const InfluenceGame& game) {
  std::string out = "digraph influence {\n";
  for (const std::string& name : game.vocab.agent_names()) out += "  \"" + name + "\";\n";
  for (const auto& [from, to] : game.network.edges())
    out += "  \"" + game.vocab.agent_name(from) + "\" -> \"" + game.vocab.agent_name(to) + "\";\n";
  return out + "}\n";
}

}  // namespace influence
