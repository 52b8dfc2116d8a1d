#ifndef INFLUENCE_GAME_IO_HPP
#define INFLUENCE_GAME_IO_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "influence/game_analysis.hpp"

namespace influence {

/// Malformed or inconsistent game / strategy input. The message starts with
/// the source and the offending field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Game file:
///
///   {
///     "agents": ["i", "j", "k"],
///     "issues": ["p"],
///     "edges": [["j", "i"], ["k", "i"]],        // (from, to): to is influenced by from
///     "beliefs": [[0], [1], [1]],                // agent-major, issue-minor
///     "visibility": [[1], [1], [0]],
///     "goals": {"i": "F B[i,p]"},                // missing agents get `true`
///     "aggregation": "unanimous"                 // or "majority", or per agent
///   }
///
/// An optional "strategies" member is read like a strategy file.
InfluenceGame parse_game(std::string_view text, const std::string& source = "game");
InfluenceGame load_game(const std::string& path);

struct StrategyFile {
  StrategyProfile profile;                           ///< agents not listed play skip
  std::vector<std::vector<Strategy>> alternatives;  ///< per agent, for the table family
};

/// Strategy file:
///
///   {
///     "strategies": {
///       "i": "reveal p",
///       "j": {"rules": [{"if": "B[j,p]", "then": "reveal p"}], "else": "hide p"},
///       "k": {"table": [{"class": "(0,1,1)/(1,1,0)", "then": "reveal p"}], "else": "skip"}
///     },
///     "alternatives": {"j": ["skip", "reveal p"]}
///   }
StrategyFile parse_strategies(std::string_view text, const InfluenceGame& game, const std::string& source = "strategies");
StrategyFile strategies_from_json(const nlohmann::json& doc, const InfluenceGame& game, const std::string& source);
StrategyFile load_strategies(const std::string& path, const InfluenceGame& game);
/// The strategies embedded in the game file, or all-skip.
StrategyFile embedded_strategies(std::string_view game_text, const InfluenceGame& game, const std::string& source);

Strategy parse_strategy(const nlohmann::json& spec, AgentId i, const InfluenceGame& game, const std::string& where);
/// Inverse of parse_strategy for Constant, Rules and Table strategies; Dense
/// strategies are written as tables.
nlohmann::json strategy_to_json(const Strategy& q, const InfluenceGame& game);

/// Machine-readable verdict record.
nlohmann::json verdict_to_json(const Verdict& v, const InfluenceGame& game, std::string_view question);

/// DOT digraph of the network with agent names, edges in (from, to) order.
std::string to_dot(const InfluenceGame& game);

std::string read_file(const std::string& path);

}  // namespace influence

#endif  // INFLUENCE_GAME_IO_HPP
