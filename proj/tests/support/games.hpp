// Reference answers for the solution concepts over the Full family, by
// walking histories. A "free" agent plays an arbitrary state-based strategy:
// its action is chosen the first time one of its information classes is
// visited and reused afterwards. Classes are found with
// oracle::indistinguishable, never with the library's class keys.
#ifndef INFLUENCE_TESTS_GAMES_HPP
#define INFLUENCE_TESTS_GAMES_HPP

#include <optional>

#include "influence/game_analysis.hpp"

namespace oracle {

// Truth of phi at time 0 of the lasso states[0..] with the cycle starting
// at cycle_start, via eval_word on an unrolled copy.
bool eval_lasso(const influence::TemporalFormula& phi, const std::vector<influence::State>& states,
                std::size_t cycle_start);

bool winning_full(const influence::InfluenceGame& g, influence::AgentId i, const influence::Strategy& q, bool uniform);
bool dominant_full(const influence::InfluenceGame& g, influence::AgentId i, const influence::Strategy& q, bool uniform);
bool best_response_full(const influence::InfluenceGame& g, influence::AgentId i, const influence::StrategyProfile& profile);
bool coherent_full(const influence::InfluenceGame& g, const influence::TemporalFormula& goal, const influence::State& s0);

// Inf(j) non-empty and every backward walk from j through agents other
// than i ends in i: no influencer-free agent and no cycle avoiding i.
bool controls(const influence::InfluenceNetwork& net, influence::AgentId i, influence::AgentId j);

// S_0's ~_i class, filtered from the whole state space.
std::vector<influence::State> class_of(const influence::State& s0, influence::AgentId i);

}  // namespace oracle

#endif
