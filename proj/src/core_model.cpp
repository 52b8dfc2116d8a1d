#include "influence/core_model.hpp"

#include <algorithm>
#include <bit>

namespace influence {

void Dimensions::validate() const {
  if (agents == 0 || issues == 0) throw std::invalid_argument("a game needs at least one agent and one issue");
  if (agents > 32 || issues > 32 || cells() > kMaxCells)
    throw std::invalid_argument("agents x issues = " + std::to_string(agents) + " x " + std::to_string(issues) +
                                " exceeds the supported " + std::to_string(kMaxCells) + " cells");
}

State::State(Dimensions dims, std::uint32_t beliefs, std::uint32_t visibility)
    : dims_(dims), beliefs_(beliefs & dims.all_mask()), visibility_(visibility & dims.all_mask()) {
  dims.validate();
}

State State::from_rows(Dimensions dims, const std::vector<std::vector<int>>& beliefs,
                       const std::vector<std::vector<int>>& visibility) {
  dims.validate();
  auto pack = [&](const std::vector<std::vector<int>>& rows, const char* what) {
    if (rows.size() != dims.agents)
      throw std::invalid_argument(std::string(what) + " matrix has " + std::to_string(rows.size()) +
                                  " rows, expected " + std::to_string(dims.agents));
    std::uint32_t bits = 0;
    for (std::uint32_t i = 0; i < dims.agents; ++i) {
      if (rows[i].size() != dims.issues)
        throw std::invalid_argument(std::string(what) + " row " + std::to_string(i) + " has " +
                                    std::to_string(rows[i].size()) + " entries, expected " +
                                    std::to_string(dims.issues));
      for (std::uint32_t p = 0; p < dims.issues; ++p) {
        const int v = rows[i][p];
        if (v != 0 && v != 1) throw std::invalid_argument(std::string(what) + " entries must be 0 or 1");
        if (v) bits |= 1u << dims.cell(AgentId{i}, IssueId{p});
      }
    }
    return bits;
  };
  return State(dims, pack(beliefs, "belief"), pack(visibility, "visibility"));
}

State State::from_code(Dimensions dims, std::uint64_t code) {
  const auto mask = static_cast<std::uint64_t>(dims.all_mask());
  return State(dims, static_cast<std::uint32_t>(code & mask),
               static_cast<std::uint32_t>((code >> dims.cells()) & mask));
}

void State::set_belief(AgentId i, IssueId p, bool v) {
  const std::uint32_t bit = 1u << dims_.cell(i, p);
  beliefs_ = v ? (beliefs_ | bit) : (beliefs_ & ~bit);
}

void State::set_visible(AgentId i, IssueId p, bool v) {
  const std::uint32_t bit = 1u << dims_.cell(i, p);
  visibility_ = v ? (visibility_ | bit) : (visibility_ & ~bit);
}

OpinionVector State::beliefs_of(AgentId i) const {
  return {(beliefs_ & dims_.agent_mask(i)) >> (i.value * dims_.issues)};
}

VisibilityVector State::visibility_of(AgentId i) const {
  return {(visibility_ & dims_.agent_mask(i)) >> (i.value * dims_.issues)};
}

void State::set_beliefs_of(AgentId i, OpinionVector b) {
  const std::uint32_t mask = dims_.agent_mask(i);
  beliefs_ = (beliefs_ & ~mask) | ((b.bits << (i.value * dims_.issues)) & mask);
}

std::string format_state(const State& s) {
  const Dimensions d = s.dims();
  auto matrix = [&](auto bit) {
    std::string out = "(";
    for (std::uint32_t i = 0; i < d.agents; ++i) {
      if (i) out += ',';
      for (std::uint32_t p = 0; p < d.issues; ++p) out += bit(AgentId{i}, IssueId{p}) ? '1' : '0';
    }
    return out + ")";
  };
  return "(" + matrix([&](AgentId i, IssueId p) { return s.belief(i, p); }) + "," +
         matrix([&](AgentId i, IssueId p) { return s.visible(i, p); }) + ")";
}

std::uint64_t state_count(Dimensions dims) {
  if (2 * dims.cells() > 62) throw std::length_error("state space too large to count");
  return std::uint64_t{1} << (2 * dims.cells());
}

void StateSpaceGuard::check(Dimensions dims) const {
  if (2 * dims.cells() > 62 || state_count(dims) > max_states)
    throw BudgetExceeded("state space of 2^" + std::to_string(2 * dims.cells()) +
                         " states exceeds the guard of " + std::to_string(max_states));
}

void for_each_state(Dimensions dims, const std::function<void(const State&)>& f, const StateSpaceGuard& guard) {
  dims.validate();
  guard.check(dims);
  const std::uint64_t total = state_count(dims);
  for (std::uint64_t code = 0; code < total; ++code) f(State::from_code(dims, code));
}

InfluenceNetwork::InfluenceNetwork(std::uint32_t agents, const std::vector<std::pair<AgentId, AgentId>>& edges)
    : in_masks_(agents, 0) {
  if (agents > 64) throw std::invalid_argument("at most 64 agents are supported in a network");
  for (const auto& [from, to] : edges) {
    if (from.value >= agents || to.value >= agents)
      throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(from.value) + "," +
                                  std::to_string(to.value) + ")");
    if (from == to)
      throw std::invalid_argument("influence network must be irreflexive: self-loop on agent " +
                                  std::to_string(from.value));
    in_masks_[to.value] |= std::uint64_t{1} << from.value;
  }
}

InfluenceNetwork InfluenceNetwork::complete(std::uint32_t agents) {
  std::vector<std::pair<AgentId, AgentId>> edges;
  for (std::uint32_t a = 0; a < agents; ++a)
    for (std::uint32_t b = 0; b < agents; ++b)
      if (a != b) edges.emplace_back(AgentId{a}, AgentId{b});
  return InfluenceNetwork(agents, edges);
}

bool InfluenceNetwork::has_edge(AgentId from, AgentId to) const {
  return to.value < in_masks_.size() && from.value < 64 && ((in_masks_[to.value] >> from.value) & 1u);
}

std::vector<std::pair<AgentId, AgentId>> InfluenceNetwork::edges() const {
  std::vector<std::pair<AgentId, AgentId>> out;
  for (std::uint32_t from = 0; from < agents(); ++from)
    for (std::uint32_t to = 0; to < agents(); ++to)
      if (has_edge(AgentId{from}, AgentId{to})) out.emplace_back(AgentId{from}, AgentId{to});
  return out;
}

PublicOpinion public_opinion(const State& s, AgentId i) {
  if (i.value >= s.dims().agents) throw std::out_of_range("unknown agent id " + std::to_string(i.value));
  const std::uint32_t vis = s.visibility_of(i).bits;
  return {s.beliefs_of(i).bits & vis, vis};
}

std::vector<AgentId> influencers(const InfluenceNetwork& net, AgentId j) {
  std::vector<AgentId> out;
  for (std::uint64_t mask = net.influencer_mask(j); mask != 0; mask &= mask - 1)
    out.emplace_back(static_cast<std::uint32_t>(std::countr_zero(mask)));
  return out;
}

std::vector<AgentId> active_influencers(const State& s, const InfluenceNetwork& net, AgentId i, IssueId p) {
  std::vector<AgentId> out;
  for (AgentId j : influencers(net, i))
    if (s.visible(j, p)) out.push_back(j);
  return out;
}

namespace {

// Cells whose belief agent i cannot see: hidden cells of the other agents.
std::uint32_t uncertain_cells(const State& s, AgentId i) {
  const Dimensions d = s.dims();
  return ~s.visibility_bits() & ~d.agent_mask(i) & d.all_mask();
}

}  // namespace

bool indistinguishable(const State& s, const State& t, AgentId i) {
  if (s.dims() != t.dims() || s.visibility_bits() != t.visibility_bits()) return false;
  const std::uint32_t known = ~uncertain_cells(s, i) & s.dims().all_mask();
  return (s.belief_bits() & known) == (t.belief_bits() & known);
}

bool for_each_indistinguishable(const State& s, AgentId i, const std::function<bool(const State&)>& f) {
  const std::uint32_t hidden = uncertain_cells(s, i);
  const std::uint32_t fixed = s.belief_bits() & ~hidden;
  std::uint32_t sub = 0;
  do {
    if (!f(State(s.dims(), fixed | sub, s.visibility_bits()))) return false;
    sub = (sub - hidden) & hidden;
  } while (sub != 0);
  return true;
}

std::vector<State> indistinguishability_class(const State& s, AgentId i) {
  std::vector<State> out;
  out.reserve(std::size_t{1} << std::popcount(uncertain_cells(s, i)));
  for_each_indistinguishable(s, i, [&](const State& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

bool is_valid_name(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

Vocabulary::Vocabulary(std::vector<std::string> agents, std::vector<std::string> issues)
    : agents_(std::move(agents)), issues_(std::move(issues)) {
  auto check = [](const std::vector<std::string>& names, const char* what) {
    for (std::size_t a = 0; a < names.size(); ++a) {
      if (!is_valid_name(names[a])) throw std::invalid_argument(std::string("invalid ") + what + " name '" + names[a] + "'");
      for (std::size_t b = 0; b < a; ++b)
        if (names[a] == names[b]) throw std::invalid_argument(std::string("duplicate ") + what + " name '" + names[a] + "'");
    }
  };
  check(agents_, "agent");
  check(issues_, "issue");
}

Vocabulary Vocabulary::open() {
  Vocabulary v;
  v.open_ = true;
  return v;
}

std::optional<AgentId> Vocabulary::find_agent(std::string_view name) const {
  for (std::size_t i = 0; i < agents_.size(); ++i)
    if (agents_[i] == name) return AgentId{static_cast<std::uint32_t>(i)};
  return std::nullopt;
}

std::optional<IssueId> Vocabulary::find_issue(std::string_view name) const {
  for (std::size_t p = 0; p < issues_.size(); ++p)
    if (issues_[p] == name) return IssueId{static_cast<std::uint32_t>(p)};
  return std::nullopt;
}

std::optional<AgentId> Vocabulary::resolve_agent(std::string_view name) {
  if (auto found = find_agent(name)) return found;
  if (!open_ || !is_valid_name(name)) return std::nullopt;
  agents_.emplace_back(name);
  return AgentId{static_cast<std::uint32_t>(agents_.size() - 1)};
}

std::optional<IssueId> Vocabulary::resolve_issue(std::string_view name) {
  if (auto found = find_issue(name)) return found;
  if (!open_ || !is_valid_name(name)) return std::nullopt;
  issues_.emplace_back(name);
  return IssueId{static_cast<std::uint32_t>(issues_.size() - 1)};
}

}  // namespace influence
