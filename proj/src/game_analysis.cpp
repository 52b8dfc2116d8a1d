#include "influence/game_analysis.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "influence/evaluator.hpp"

namespace influence {

void InfluenceGame::validate() const {
  const Dimensions d = dims();
  d.validate();
  if (vocab.dims() != d) throw std::invalid_argument("vocabulary does not match the state dimensions");
  if (network.agents() != d.agents) throw std::invalid_argument("network size does not match the number of agents");
  if (rules.size() != d.agents) throw std::invalid_argument("one aggregation rule per agent is required");
  for (const RulePtr& r : rules)
    if (!r) throw std::invalid_argument("missing aggregation rule");
  if (goals.size() != d.agents) throw std::invalid_argument("one goal per agent is required");
}

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Constant: return "constant";
    case FamilyKind::Full: return "full";
    case FamilyKind::Reachable: return "reachable";
    case FamilyKind::Table: return "table";
  }
  return "constant";
}

std::optional<FamilyKind> parse_family(std::string_view name) {
  if (name == "constant") return FamilyKind::Constant;
  if (name == "full") return FamilyKind::Full;
  if (name == "reachable") return FamilyKind::Reachable;
  if (name == "table") return FamilyKind::Table;
  return std::nullopt;
}

bool satisfies(const InfluenceGame& game, const TemporalFormula& goal, const StrategyProfile& profile,
               const State& s0, const StateSpaceGuard& guard) {
  const Lasso lasso = induced_lasso(s0, profile, game.network, game.rules, guard);
  return eval(goal, lasso, 0);
}

std::vector<bool> satisfies(const InfluenceGame& game, const StrategyProfile& profile, const State& s0,
                            const StateSpaceGuard& guard) {
  const Lasso lasso = induced_lasso(s0, profile, game.network, game.rules, guard);
  LassoEvaluator ev(lasso);
  std::vector<bool> out;
  for (const TemporalFormula& g : game.goals) out.push_back(ev(g, 0));
  return out;
}

std::vector<State> initial_states(const InfluenceGame& game, AgentId i, bool uniform) {
  if (!uniform) return {game.initial};
  return indistinguishability_class(game.initial, i);
}

bool controls(const InfluenceNetwork& net, AgentId i, AgentId j) {
  if (i == j) throw std::invalid_argument("controls: i and j must differ");
  std::uint64_t controlled = 0;
  const std::uint64_t self = std::uint64_t{1} << i.value;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::uint32_t k = 0; k < net.agents(); ++k) {
      const std::uint64_t bit = std::uint64_t{1} << k;
      if (k == i.value || (controlled & bit)) continue;
      const std::uint64_t inf = net.influencer_mask(AgentId{k});
      if (inf != 0 && (inf & ~(controlled | self)) == 0) {
        controlled |= bit;
        grew = true;
      }
    }
  }
  return (controlled >> j.value) & 1u;
}

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > std::numeric_limits<std::uint64_t>::max() / b ? std::numeric_limits<std::uint64_t>::max() : a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t k = 0; k < exp && out != std::numeric_limits<std::uint64_t>::max(); ++k)
    out = saturating_mul(out, base);
  return out;
}

// Every state reachable from `from` under all joint actions.
std::vector<State> reachable_states(const InfluenceGame& game, const std::vector<State>& from,
                                    const StateSpaceGuard& guard) {
  const Dimensions d = game.dims();
  const std::vector<Action> actions = all_actions(d.issues);
  std::unordered_set<std::uint64_t> seen;
  std::vector<State> order;
  for (const State& s : from)
    if (seen.insert(s.code()).second) order.push_back(s);
  JointAction joint(d.agents);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const State s = order[head];
    std::vector<std::uint32_t> digits(d.agents, 0);
    while (true) {
      for (std::uint32_t a = 0; a < d.agents; ++a) joint[a] = actions[digits[a]];
      const State t = transition(s, joint, game.network, game.rules);
      if (seen.insert(t.code()).second) {
        if (order.size() >= guard.max_states) throw BudgetExceeded("reachable state set exceeds the guard");
        order.push_back(t);
      }
      std::uint32_t a = 0;
      while (a < d.agents && ++digits[a] == actions.size()) digits[a++] = 0;
      if (a == d.agents) break;
    }
  }
  return order;
}

}  // namespace

std::vector<std::uint64_t> reachable_classes(const InfluenceGame& game, AgentId i, const std::vector<State>& from,
                                             const StateSpaceGuard& guard) {
  std::set<std::uint64_t> keys;
  for (const State& s : reachable_states(game, from, guard)) keys.insert(class_key(s, i).code(s.dims()));
  return {keys.begin(), keys.end()};
}

namespace {

using Policy = std::function<Action(const State&)>;

// One quantified strategy variable.
struct Slot {
  AgentId agent;
  FamilyKind kind = FamilyKind::Constant;
  std::vector<Strategy> candidates;   // Constant, Table
  std::vector<std::uint64_t> classes;  // Full (class indices) / Reachable (class codes)
  std::uint64_t size = 0;
};

// The matrix of a quantifier block: receives one policy per slot and may
// note the initial state that decided it.
using Matrix = std::function<bool(std::span<const Policy>, std::optional<State>&)>;

struct Problem {
  std::vector<Slot> slots;
  bool universal = true;
  Matrix matrix;
};

struct Outcome {
  bool value = false;
  std::uint64_t evaluations = 0;
  // Present when the block was decided by a particular tuple: the
  // counterexample of a universal block or the witness of an existential one.
  std::optional<std::vector<Strategy>> decisive;
  std::optional<State> state;
};

Slot make_slot(const InfluenceGame& game, AgentId agent, const StrategyFamily& family,
               const std::vector<State>& inits, const AnalysisOptions& options) {
  const Dimensions d = game.dims();
  const std::uint32_t actions = action_count(d.issues);
  Slot slot;
  slot.agent = agent;
  slot.kind = family.kind;
  switch (family.kind) {
    case FamilyKind::Constant:
      for (const Action& a : all_actions(d.issues)) slot.candidates.push_back(Strategy::constant(agent, a));
      break;
    case FamilyKind::Table:
      if (family.alternatives.size() <= agent.value || family.alternatives[agent.value].empty())
        throw std::invalid_argument("table family lists no strategies for agent '" + game.vocab.agent_name(agent) +
                                    "'");
      slot.candidates = family.alternatives[agent.value];
      break;
    case FamilyKind::Full: {
      const std::uint64_t count = class_count(d);
      const std::uint64_t size = saturating_pow(actions, count);
      if (size > options.budget)
        throw BudgetExceeded("full family for agent '" + game.vocab.agent_name(agent) + "' has " +
                             std::to_string(actions) + "^" + std::to_string(count) +
                             " strategies, over the budget of " + std::to_string(options.budget));
      for (std::uint64_t k = 0; k < count; ++k) slot.classes.push_back(k);
      break;
    }
    case FamilyKind::Reachable: {
      slot.classes = reachable_classes(game, agent, inits, options.guard);
      const std::uint64_t size = saturating_pow(actions, slot.classes.size());
      if (size > options.budget)
        throw BudgetExceeded("reachable family for agent '" + game.vocab.agent_name(agent) + "' has " +
                             std::to_string(actions) + "^" + std::to_string(slot.classes.size()) +
                             " strategies, over the budget of " + std::to_string(options.budget));
      break;
    }
  }
  slot.size = slot.candidates.empty() ? saturating_pow(actions, slot.classes.size()) : slot.candidates.size();
  return slot;
}

std::uint64_t block_size(const Problem& p) {
  std::uint64_t total = 1;
  for (const Slot& s : p.slots) total = saturating_mul(total, s.size);
  return total;
}

void check_budget(const Problem& p, const AnalysisOptions& options) {
  const std::uint64_t total = block_size(p);
  if (total > options.budget)
    throw BudgetExceeded("quantifier block ranges over " +
                         (total == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
                                                                             : std::to_string(total)) +
                         " strategy tuples, over the budget of " + std::to_string(options.budget));
}

// k-th strategy of a slot in canonical order.
Strategy candidate(const Slot& slot, Dimensions d, std::uint64_t k) {
  if (!slot.candidates.empty()) return slot.candidates[k];
  const std::uint32_t radix = action_count(d.issues);
  if (slot.kind == FamilyKind::Full) {
    std::vector<Action> actions(slot.classes.size());
    for (std::size_t c = 0; c < actions.size(); ++c) {
      actions[c] = Action::from_index(static_cast<std::uint32_t>(k % radix), d.issues);
      k /= radix;
    }
    return Strategy::dense(slot.agent, d, std::move(actions));
  }
  std::map<std::uint64_t, Action> table;
  for (std::uint64_t code : slot.classes) {
    table.emplace(code, Action::from_index(static_cast<std::uint32_t>(k % radix), d.issues));
    k /= radix;
  }
  return Strategy::table(slot.agent, d, std::move(table), Action::skip());
}

// Literal enumeration of the whole block; the tuple with the smallest index
// in canonical order decides, whatever the number of workers.
Outcome solve_exhaustive(const Problem& p, Dimensions d, unsigned threads) {
  const std::uint64_t total = block_size(p);
  std::atomic<std::uint64_t> first{total};
  std::atomic<std::uint64_t> evaluations{0};
  auto decode = [&](std::uint64_t index) {
    std::vector<Strategy> tuple(p.slots.size());
    for (std::size_t s = p.slots.size(); s-- > 0;) {
      tuple[s] = candidate(p.slots[s], d, index % p.slots[s].size);
      index /= p.slots[s].size;
    }
    return tuple;
  };
  auto to_policies = [](const std::vector<Strategy>& tuple) {
    std::vector<Policy> out;
    for (const Strategy& q : tuple) out.emplace_back(q);
    return out;
  };
  auto worker = [&](unsigned id, unsigned stride) {
    std::optional<State> note;
    for (std::uint64_t index = id; index < first.load(std::memory_order_relaxed); index += stride) {
      const auto policies = to_policies(decode(index));
      evaluations.fetch_add(1, std::memory_order_relaxed);
      if (p.matrix(policies, note) != p.universal) {
        std::uint64_t cur = first.load();
        while (index < cur && !first.compare_exchange_weak(cur, index)) {
        }
        return;
      }
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    std::mutex error_lock;
    std::exception_ptr error;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          worker(t, threads);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_lock);
          if (!error) error = std::current_exception();
          first.store(0);
        }
      });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }
  Outcome out;
  out.evaluations = evaluations.load();
  if (first.load() == total) {
    out.value = p.universal;
    return out;
  }
  out.value = !p.universal;
  out.decisive = decode(first.load());
  const auto policies = to_policies(*out.decisive);
  p.matrix(policies, out.state);
  return out;
}

// Raised by a Full/Reachable slot consulted on a class it has no action for
// yet.
struct MissingClass {
  std::size_t slot;
  std::uint64_t code;
};

// Lazy exact search. Full and Reachable slots start with no entries; the
// matrix is run and, whenever it consults an unassigned class, the search
// branches over the 2m+1 actions for that class and replays. Classes the
// matrix never consults cannot influence it, so this decides exactly the
// same question as enumerating every class map.
class LazySolver {
 public:
  LazySolver(const Problem& p, Dimensions d, std::uint64_t budget)
      : p_(p), d_(d), budget_(budget), partial_(p.slots.size()), chosen_(p.slots.size(), 0) {
    for (std::size_t s = 0; s < p_.slots.size(); ++s) {
      const Slot& slot = p_.slots[s];
      if (!slot.candidates.empty()) {
        policies_.emplace_back([this, s](const State& st) { return p_.slots[s].candidates[chosen_[s]](st); });
      } else {
        const AgentId agent = slot.agent;
        policies_.emplace_back([this, s, agent](const State& st) {
          const std::uint64_t code = class_key(st, agent).code(d_);
          const auto it = partial_[s].find(code);
          if (it == partial_[s].end()) throw MissingClass{s, code};
          return it->second;
        });
      }
    }
    for (const Action& a : all_actions(d.issues)) actions_.push_back(a);
  }

  Outcome run() {
    Outcome out;
    out.value = level(0);
    out.evaluations = evaluations_;
    if (out.value != p_.universal) {
      out.decisive = snapshot_;
      out.state = note_;
    }
    return out;
  }

 private:
  bool level(std::size_t s) {
    if (s == p_.slots.size()) return branch();
    const Slot& slot = p_.slots[s];
    if (slot.candidates.empty()) return level(s + 1);
    for (std::size_t k = 0; k < slot.candidates.size(); ++k) {
      chosen_[s] = k;
      if (level(s + 1) != p_.universal) return !p_.universal;
    }
    return p_.universal;
  }

  // The block has a single quantifier, so whichever lazy slot is missing a
  // class can be branched on where it is found.
  bool branch() {
    MissingClass missing{};
    try {
      if (++evaluations_ > budget_)
        throw BudgetExceeded("search evaluated more than " + std::to_string(budget_) + " strategy tuples");
      std::optional<State> note;
      const bool v = p_.matrix(policies_, note);
      if (v != p_.universal) {
        snapshot_ = current();
        note_ = note;
      }
      return v;
    } catch (const MissingClass& m) {
      missing = m;
    }
    auto& entries = partial_[missing.slot];
    for (const Action& a : actions_) {
      entries.emplace(missing.code, a);
      bool v;
      try {
        v = branch();
      } catch (...) {
        entries.erase(missing.code);
        throw;
      }
      entries.erase(missing.code);
      if (v != p_.universal) return v;
    }
    return p_.universal;
  }

  std::vector<Strategy> current() const {
    std::vector<Strategy> out;
    for (std::size_t s = 0; s < p_.slots.size(); ++s) {
      const Slot& slot = p_.slots[s];
      if (!slot.candidates.empty()) {
        out.push_back(slot.candidates[chosen_[s]]);
      } else {
        std::map<std::uint64_t, Action> entries(partial_[s].begin(), partial_[s].end());
        out.push_back(Strategy::table(slot.agent, d_, std::move(entries), Action::skip()));
      }
    }
    return out;
  }

  const Problem& p_;
  Dimensions d_;
  std::uint64_t budget_;
  std::vector<std::unordered_map<std::uint64_t, Action>> partial_;
  std::vector<std::size_t> chosen_;
  std::vector<Policy> policies_;
  std::vector<Action> actions_;
  std::uint64_t evaluations_ = 0;
  std::vector<Strategy> snapshot_;
  std::optional<State> note_;
};

// Each quantified strategy is already within budget (make_slot). The literal
// enumeration also needs the whole tuple space to be; the lazy search only
// caps the tuples it actually evaluates.
Outcome solve(const Problem& p, Dimensions d, const AnalysisOptions& options) {
  if (options.exhaustive) {
    check_budget(p, options);
    return solve_exhaustive(p, d, options.threads);
  }
  return LazySolver(p, d, options.budget).run();
}

// Goal check of agent-indexed policies from s0.
bool holds_from(const InfluenceGame& game, const TemporalFormula& goal, const std::vector<Policy>& profile,
                const State& s0, const StateSpaceGuard& guard) {
  const JointPolicy joint = [&](const State& s) {
    JointAction a;
    a.reserve(profile.size());
    for (const Policy& q : profile) a.push_back(q(s));
    return a;
  };
  return eval(goal, induced_lasso(s0, joint, game.network, game.rules, guard), 0);
}

std::vector<Policy> fixed_policies(const StrategyProfile& profile) {
  std::vector<Policy> out;
  for (const Strategy& q : profile) out.emplace_back(q);
  return out;
}

Verdict to_verdict(const Outcome& o, FamilyKind family, std::uint64_t size) {
  Verdict v;
  v.holds = o.value;
  v.family = family;
  v.family_size = size;
  v.evaluations = o.evaluations;
  if (o.decisive) v.witness = Certificate{std::nullopt, *o.decisive, o.state};
  return v;
}

void check_agent(const InfluenceGame& game, AgentId i) {
  game.validate();
  if (i.value >= game.dims().agents) throw std::out_of_range("unknown agent id " + std::to_string(i.value));
}

}  // namespace

Verdict is_winning(const InfluenceGame& game, AgentId i, const Strategy& q, const StrategyFamily& family,
                   bool uniform, const AnalysisOptions& options) {
  check_agent(game, i);
  const std::vector<State> inits = initial_states(game, i, uniform);
  Problem p;
  p.universal = true;
  for (std::uint32_t j = 0; j < game.dims().agents; ++j)
    if (j != i.value) p.slots.push_back(make_slot(game, AgentId{j}, family, inits, options));
  p.matrix = [&](std::span<const Policy> opp, std::optional<State>& note) {
    std::vector<Policy> profile;
    std::size_t k = 0;
    for (std::uint32_t j = 0; j < game.dims().agents; ++j) profile.push_back(j == i.value ? Policy(q) : opp[k++]);
    for (const State& s : inits) {
      if (!holds_from(game, game.goals[i.value], profile, s, options.guard)) {
        note = s;
        return false;
      }
    }
    return true;
  };
  return to_verdict(solve(p, game.dims(), options), family.kind, block_size(p));
}

Verdict is_weakly_dominant(const InfluenceGame& game, AgentId i, const Strategy& q, const StrategyFamily& family,
                           bool uniform, const AnalysisOptions& options) {
  check_agent(game, i);
  const std::vector<State> inits = initial_states(game, i, uniform);
  Problem p;
  p.universal = true;
  for (std::uint32_t j = 0; j < game.dims().agents; ++j)
    if (j != i.value) p.slots.push_back(make_slot(game, AgentId{j}, family, inits, options));
  p.slots.push_back(make_slot(game, i, family, inits, options));
  // Both quantifiers are universal, so "for all opponents and all q': q'
  // wins => q wins" is one block.
  p.matrix = [&](std::span<const Policy> slots, std::optional<State>& note) {
    std::vector<Policy> with_q, with_alt;
    std::size_t k = 0;
    for (std::uint32_t j = 0; j < game.dims().agents; ++j) {
      if (j == i.value) {
        with_q.emplace_back(q);
        with_alt.push_back(slots.back());
      } else {
        with_q.push_back(slots[k]);
        with_alt.push_back(slots[k]);
        ++k;
      }
    }
    for (const State& s : inits) {
      if (holds_from(game, game.goals[i.value], with_q, s, options.guard)) continue;
      if (holds_from(game, game.goals[i.value], with_alt, s, options.guard)) {
        note = s;
        return false;
      }
    }
    return true;
  };
  return to_verdict(solve(p, game.dims(), options), family.kind, block_size(p));
}

Verdict is_best_response(const InfluenceGame& game, AgentId i, const Strategy& q, const StrategyProfile& profile,
                         const StrategyFamily& family, const AnalysisOptions& options) {
  check_agent(game, i);
  if (profile.size() != game.dims().agents) throw std::invalid_argument("profile must have one strategy per agent");
  const std::vector<State> inits = initial_states(game, i, true);
  std::vector<Policy> base = fixed_policies(profile);
  base[i.value] = q;

  Verdict v;
  v.family = family.kind;
  std::optional<State> failing;
  for (const State& s : inits) {
    ++v.evaluations;
    if (!holds_from(game, game.goals[i.value], base, s, options.guard)) {
      failing = s;
      break;
    }
  }
  if (!failing) {
    v.holds = true;
    return v;
  }
  // q loses somewhere in the class: it is still a best response when every
  // alternative loses somewhere too.
  Problem p;
  p.universal = true;
  p.slots.push_back(make_slot(game, i, family, inits, options));
  p.matrix = [&](std::span<const Policy> alt, std::optional<State>&) {
    std::vector<Policy> deviated = base;
    deviated[i.value] = alt[0];
    for (const State& s : inits)
      if (!holds_from(game, game.goals[i.value], deviated, s, options.guard)) return true;
    return false;
  };
  const Outcome o = solve(p, game.dims(), options);
  v.holds = o.value;
  v.family_size = block_size(p);
  v.evaluations += o.evaluations;
  if (o.decisive) v.witness = Certificate{i, *o.decisive, failing};
  return v;
}

Verdict is_nash(const InfluenceGame& game, const StrategyProfile& profile, const StrategyFamily& family,
                const AnalysisOptions& options) {
  game.validate();
  Verdict total;
  total.family = family.kind;
  total.holds = true;
  for (std::uint32_t i = 0; i < game.dims().agents; ++i) {
    Verdict v = is_best_response(game, AgentId{i}, profile.at(i), profile, family, options);
    total.evaluations += v.evaluations;
    total.family_size = std::max(total.family_size, v.family_size);
    if (!v.holds) {
      total.holds = false;
      total.witness = v.witness;
      return total;
    }
  }
  return total;
}

Verdict is_coherent(const InfluenceGame& game, const TemporalFormula& goal, const State& s0,
                    const StrategyFamily& family, const AnalysisOptions& options) {
  game.validate();
  Problem p;
  p.universal = false;
  for (std::uint32_t j = 0; j < game.dims().agents; ++j)
    p.slots.push_back(make_slot(game, AgentId{j}, family, {s0}, options));
  p.matrix = [&](std::span<const Policy> slots, std::optional<State>& note) {
    const std::vector<Policy> profile(slots.begin(), slots.end());
    if (!holds_from(game, goal, profile, s0, options.guard)) return false;
    note = s0;
    return true;
  };
  return to_verdict(solve(p, game.dims(), options), family.kind, block_size(p));
}

// ---------------------------------------------------------------------------
// Unconstrained adversaries

namespace {

struct NodeKey {
  std::uint64_t code;
  TemporalFormula residual;
  std::size_t depth;
  friend bool operator==(const NodeKey&, const NodeKey&) = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const {
    return std::hash<std::uint64_t>{}(k.code) ^ (k.residual.hash() * 31) ^ (k.depth * 1000003);
  }
};

enum class Tri : std::uint8_t { Won, Lost, Open };

class AdversarySearch {
 public:
  AdversarySearch(const InfluenceGame& game, AgentId i, const Strategy& q, std::size_t horizon)
      : game_(game), i_(i), q_(q), horizon_(horizon) {
    const Dimensions d = game.dims();
    actions_ = all_actions(d.issues);
  }

  // Explores every continuation of s at position depth. On Lost, `line`
  // receives the losing play from s onwards.
  Tri explore(const State& s, const TemporalFormula& obligation, std::size_t depth, BoundedResult& line) {
    ++nodes_;
    const TemporalFormula rest = progress(obligation, s);
    if (is_false(rest)) {
      line.states.assign(1, s);
      line.actions.clear();
      return Tri::Lost;
    }
    if (is_true(rest)) return Tri::Won;
    if (depth == horizon_) return Tri::Open;
    const NodeKey key{s.code(), rest, depth};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const Dimensions d = game_.dims();
    JointAction joint(d.agents);
    joint[i_.value] = q_(s);
    std::vector<std::uint32_t> digits(d.agents, 0);
    Tri result = Tri::Won;
    while (true) {
      for (std::uint32_t a = 0; a < d.agents; ++a)
        if (a != i_.value) joint[a] = actions_[digits[a]];
      const State t = transition(s, joint, game_.network, game_.rules);
      const Tri r = explore(t, rest, depth + 1, line);
      if (r == Tri::Lost) {
        line.states.insert(line.states.begin(), s);
        line.actions.insert(line.actions.begin(), joint);
        return Tri::Lost;  // not memoised: the line must be rebuilt
      }
      if (r == Tri::Open) result = Tri::Open;
      std::uint32_t a = 0;
      while (a < d.agents && (a == i_.value || ++digits[a] == actions_.size())) {
        if (a != i_.value) digits[a] = 0;
        ++a;
      }
      if (a == d.agents) break;
    }
    memo_.emplace(key, result);
    return result;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  const InfluenceGame& game_;
  AgentId i_;
  const Strategy& q_;
  std::size_t horizon_;
  std::vector<Action> actions_;
  std::unordered_map<NodeKey, Tri, NodeKeyHash> memo_;
  std::uint64_t nodes_ = 0;
};

// Universal path check over the graph of states reachable under q and every
// opponent action. Each temporal operator is read with a universal path
// quantifier (AX, AU, AF, AG, and their duals under negation), which is a
// sufficient condition for the goal to hold on every path.
class UniversalFixpoint {
 public:
  UniversalFixpoint(const InfluenceGame& game, AgentId i, const Strategy& q, const std::vector<State>& inits,
                    const StateSpaceGuard& guard)
      : game_(game) {
    const Dimensions d = game.dims();
    const std::vector<Action> actions = all_actions(d.issues);
    std::unordered_map<std::uint64_t, std::size_t> index;
    auto intern = [&](const State& s) {
      const auto [it, inserted] = index.emplace(s.code(), states_.size());
      if (inserted) {
        if (states_.size() >= guard.max_states) throw BudgetExceeded("reachable graph exceeds the guard");
        states_.push_back(s);
        succ_.emplace_back();
      }
      return it->second;
    };
    for (const State& s : inits) roots_.push_back(intern(s));
    JointAction joint(d.agents);
    for (std::size_t head = 0; head < states_.size(); ++head) {
      const State s = states_[head];
      joint[i.value] = q(s);
      std::vector<std::uint32_t> digits(d.agents, 0);
      std::set<std::size_t> next;
      while (true) {
        for (std::uint32_t a = 0; a < d.agents; ++a)
          if (a != i.value) joint[a] = actions[digits[a]];
        next.insert(intern(transition(s, joint, game.network, game.rules)));
        std::uint32_t a = 0;
        while (a < d.agents && (a == i.value || ++digits[a] == actions.size())) {
          if (a != i.value) digits[a] = 0;
          ++a;
        }
        if (a == d.agents) break;
      }
      succ_[head].assign(next.begin(), next.end());
    }
  }

  bool holds(const TemporalFormula& goal) {
    const std::vector<bool> set = sat(goal, true);
    return std::all_of(roots_.begin(), roots_.end(), [&](std::size_t r) { return set[r]; });
  }

 private:
  using Set = std::vector<bool>;

  Set all_next(const Set& z) const {
    Set out(states_.size());
    for (std::size_t n = 0; n < states_.size(); ++n)
      out[n] = std::all_of(succ_[n].begin(), succ_[n].end(), [&](std::size_t m) { return z[m]; });
    return out;
  }

  // Least (strong) or greatest fixpoint of Z = now | (keep & AX Z), with
  // `now` and `keep` given; gfp with now = false gives AG keep.
  Set fixpoint(const Set& now, const Set& keep, bool greatest) const {
    Set z(states_.size(), greatest);
    for (bool changed = true; changed;) {
      changed = false;
      const Set ax = all_next(z);
      for (std::size_t n = 0; n < z.size(); ++n) {
        const bool v = now[n] || (keep[n] && ax[n]);
        if (v != z[n]) {
          z[n] = v;
          changed = true;
        }
      }
    }
    return z;
  }

  static Set meet(const Set& a, const Set& b) {
    Set out(a.size());
    for (std::size_t n = 0; n < a.size(); ++n) out[n] = a[n] && b[n];
    return out;
  }
  static Set join(const Set& a, const Set& b) {
    Set out(a.size());
    for (std::size_t n = 0; n < a.size(); ++n) out[n] = a[n] || b[n];
    return out;
  }

  // States from which every path satisfies phi (positive) or !phi.
  Set sat(const TemporalFormula& phi, bool positive) {
    const std::size_t n = states_.size();
    const Set none(n, false), every(n, true);
    switch (phi.op()) {
      case TemporalOp::State: {
        Set out(n);
        for (std::size_t k = 0; k < n; ++k) out[k] = eval_state(phi.state(), states_[k]) == positive;
        return out;
      }
      case TemporalOp::Not: return sat(phi.lhs(), !positive);
      case TemporalOp::And:
        return positive ? meet(sat(phi.lhs(), true), sat(phi.rhs(), true))
                        : join(sat(phi.lhs(), false), sat(phi.rhs(), false));
      case TemporalOp::Or:
        return positive ? join(sat(phi.lhs(), true), sat(phi.rhs(), true))
                        : meet(sat(phi.lhs(), false), sat(phi.rhs(), false));
      case TemporalOp::Implies:
        return positive ? join(sat(phi.lhs(), false), sat(phi.rhs(), true))
                        : meet(sat(phi.lhs(), true), sat(phi.rhs(), false));
      case TemporalOp::Next: return all_next(sat(phi.lhs(), positive));
      case TemporalOp::Until:
        if (positive) return fixpoint(sat(phi.rhs(), true), sat(phi.lhs(), true), false);
        // !(a U b): !b holds until (!a & !b), or forever.
        return meet(sat(phi.rhs(), false),
                    fixpoint(meet(sat(phi.lhs(), false), sat(phi.rhs(), false)), sat(phi.rhs(), false), true));
      case TemporalOp::Eventually:
        return positive ? fixpoint(sat(phi.lhs(), true), every, false) : fixpoint(none, sat(phi.lhs(), false), true);
      case TemporalOp::Henceforth:
        return positive ? fixpoint(none, sat(phi.lhs(), true), true) : fixpoint(sat(phi.lhs(), false), every, false);
    }
    return none;
  }

  const InfluenceGame& game_;
  std::vector<State> states_;
  std::vector<std::vector<std::size_t>> succ_;
  std::vector<std::size_t> roots_;
};

}  // namespace

BoundedResult is_winning_bounded(const InfluenceGame& game, AgentId i, const Strategy& q, std::size_t horizon,
                                 bool uniform, const AnalysisOptions& options) {
  check_agent(game, i);
  const std::vector<State> inits = initial_states(game, i, uniform);
  const TemporalFormula& goal = game.goals[i.value];
  AdversarySearch search(game, i, q, horizon);
  BoundedResult result;
  result.method = "search";
  bool open = false;
  for (const State& s : inits) {
    BoundedResult line;
    const Tri r = search.explore(s, goal, 0, line);
    if (r == Tri::Lost) {
      result.status = BoundedStatus::NotWinning;
      result.states = std::move(line.states);
      result.actions = std::move(line.actions);
      result.nodes = search.nodes();
      return result;
    }
    if (r == Tri::Open) open = true;
  }
  result.nodes = search.nodes();
  if (!open) {
    result.status = BoundedStatus::Winning;
    return result;
  }
  UniversalFixpoint fix(game, i, q, inits, options.guard);
  if (fix.holds(goal)) {
    result.status = BoundedStatus::Winning;
    result.method = "fixpoint";
  } else {
    result.status = BoundedStatus::Undetermined;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Deviation probe

namespace {

struct Belief {
  State state;
  TemporalFormula obligation;
};

class DeviationSearch {
 public:
  DeviationSearch(const InfluenceGame& game, const StrategyProfile& profile, AgentId i, std::size_t horizon)
      : game_(game), profile_(profile), i_(i), horizon_(horizon), actions_(all_actions(game.dims().issues)) {}

  // Can i secure the obligations of every state in this information set?
  bool win(const std::vector<Belief>& info, std::size_t depth, std::vector<std::string>* plan) {
    ++nodes_;
    std::vector<Belief> open;
    for (const Belief& b : info) {
      const TemporalFormula rest = progress(b.obligation, b.state);
      if (is_false(rest)) return false;
      if (!is_true(rest)) open.push_back({b.state, rest});
    }
    if (open.empty()) return true;
    if (depth == horizon_) return false;
    const Dimensions d = game_.dims();
    for (const Action& a : actions_) {
      std::map<std::uint64_t, std::vector<Belief>> groups;
      for (const Belief& b : open) {
        JointAction joint;
        for (std::uint32_t j = 0; j < d.agents; ++j) joint.push_back(j == i_.value ? a : profile_[j](b.state));
        const State t = transition(b.state, joint, game_.network, game_.rules);
        groups[class_key(t, i_).code(d)].push_back({t, b.obligation});
      }
      bool all = true;
      std::vector<std::string> sub;
      for (const auto& [code, group] : groups) {
        if (!win(group, depth + 1, plan ? &sub : nullptr)) {
          all = false;
          break;
        }
      }
      if (all) {
        if (plan) {
          plan->push_back("t=" + std::to_string(depth) + " " +
                          format_class(d, i_, class_key(open.front().state, i_)) + " " +
                          to_string(a, game_.vocab));
          plan->insert(plan->end(), sub.begin(), sub.end());
        }
        return true;
      }
    }
    return false;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  const InfluenceGame& game_;
  const StrategyProfile& profile_;
  AgentId i_;
  std::size_t horizon_;
  std::vector<Action> actions_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

ProbeResult deviation_probe(const InfluenceGame& game, const StrategyProfile& profile, AgentId i,
                            std::size_t horizon) {
  check_agent(game, i);
  ProbeResult out;
  const std::vector<State> inits = initial_states(game, i, true);
  bool wins_everywhere = true;
  for (const State& s : inits) {
    if (!satisfies(game, game.goals[i.value], profile, s)) {
      wins_everywhere = false;
      break;
    }
  }
  if (wins_everywhere) {
    out.already_winning = true;
    return out;
  }
  std::vector<Belief> info;
  for (const State& s : inits) info.push_back({s, game.goals[i.value]});
  DeviationSearch search(game, profile, i, horizon);
  out.deviation_found = search.win(info, 0, &out.plan);
  if (!out.deviation_found) out.plan.clear();
  out.nodes = search.nodes();
  return out;
}

}  // namespace influence
