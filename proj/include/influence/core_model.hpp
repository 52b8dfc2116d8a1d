#ifndef INFLUENCE_CORE_MODEL_HPP
#define INFLUENCE_CORE_MODEL_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace influence {

/// Dense index of an agent in N.
struct AgentId {
  std::uint32_t value = 0;
  constexpr AgentId() = default;
  constexpr explicit AgentId(std::uint32_t v) : value(v) {}
  friend constexpr auto operator<=>(AgentId, AgentId) = default;
};

/// Dense index of an issue in I.
struct IssueId {
  std::uint32_t value = 0;
  constexpr IssueId() = default;
  constexpr explicit IssueId(std::uint32_t v) : value(v) {}
  friend constexpr auto operator<=>(IssueId, IssueId) = default;
};

/// Size of a game: |N| agents and |I| issues.
///
/// Every (agent, issue) cell owns one belief bit and one visibility bit, so a
/// state packs into 2*agents*issues bits. At most kMaxCells cells are allowed.
struct Dimensions {
  std::uint32_t agents = 0;
  std::uint32_t issues = 0;

  static constexpr std::uint32_t kMaxCells = 32;

  constexpr std::uint32_t cells() const { return agents * issues; }
  constexpr std::uint32_t cell(AgentId i, IssueId p) const { return i.value * issues + p.value; }
  /// Bit mask covering the cells of agent i.
  constexpr std::uint32_t agent_mask(AgentId i) const {
    const std::uint32_t row = issues >= 32 ? ~0u : ((1u << issues) - 1u);
    return row << (i.value * issues);
  }
  constexpr std::uint32_t all_mask() const { return cells() >= 32 ? ~0u : ((1u << cells()) - 1u); }

  /// Throws std::invalid_argument when the dimensions are empty or too large.
  void validate() const;

  friend constexpr bool operator==(Dimensions, Dimensions) = default;
};

/// Private opinion B_i: one bit per issue.
struct OpinionVector {
  std::uint32_t bits = 0;
  constexpr bool operator[](IssueId p) const { return (bits >> p.value) & 1u; }
  friend constexpr bool operator==(OpinionVector, OpinionVector) = default;
};

/// Visibility function V_i: one bit per issue.
struct VisibilityVector {
  std::uint32_t bits = 0;
  constexpr bool operator[](IssueId p) const { return (bits >> p.value) & 1u; }
  friend constexpr bool operator==(VisibilityVector, VisibilityVector) = default;
};

enum class PublicValue : std::uint8_t { False, True, Unknown };

/// Public opinion P_i. `known` marks visible issues; `value` carries the
/// belief for those issues and is zero elsewhere.
struct PublicOpinion {
  std::uint32_t value = 0;
  std::uint32_t known = 0;

  constexpr PublicValue operator[](IssueId p) const {
    if (((known >> p.value) & 1u) == 0) return PublicValue::Unknown;
    return ((value >> p.value) & 1u) ? PublicValue::True : PublicValue::False;
  }
  friend constexpr bool operator==(PublicOpinion, PublicOpinion) = default;
};

/// A state S = (B, V): belief and visibility profiles of every agent, packed
/// agent-major, issue-minor.
class State {
 public:
  State() = default;
  explicit State(Dimensions dims, std::uint32_t beliefs = 0, std::uint32_t visibility = 0);

  /// Builds a state from per-agent rows of 0/1 values.
  static State from_rows(Dimensions dims, const std::vector<std::vector<int>>& beliefs,
                         const std::vector<std::vector<int>>& visibility);
  /// Inverse of code().
  static State from_code(Dimensions dims, std::uint64_t code);

  Dimensions dims() const { return dims_; }
  std::uint32_t belief_bits() const { return beliefs_; }
  std::uint32_t visibility_bits() const { return visibility_; }
  /// Dense encoding: beliefs in the low cells() bits, visibility above.
  std::uint64_t code() const {
    return static_cast<std::uint64_t>(beliefs_) | (static_cast<std::uint64_t>(visibility_) << dims_.cells());
  }

  bool belief(AgentId i, IssueId p) const { return (beliefs_ >> dims_.cell(i, p)) & 1u; }
  bool visible(AgentId i, IssueId p) const { return (visibility_ >> dims_.cell(i, p)) & 1u; }
  void set_belief(AgentId i, IssueId p, bool v);
  void set_visible(AgentId i, IssueId p, bool v);

  OpinionVector beliefs_of(AgentId i) const;
  VisibilityVector visibility_of(AgentId i) const;
  void set_beliefs_of(AgentId i, OpinionVector b);

  friend bool operator==(const State& a, const State& b) {
    return a.dims_ == b.dims_ && a.beliefs_ == b.beliefs_ && a.visibility_ == b.visibility_;
  }

 private:
  Dimensions dims_{};
  std::uint32_t beliefs_ = 0;
  std::uint32_t visibility_ = 0;
};

/// Renders a state as `((B_1,..,B_n),(V_1,..,V_n))`; with several issues each
/// agent's entry is the issue bits in order, e.g. `((01,10),(11,00))`.
std::string format_state(const State& s);

/// Number of states 2^(2nm). Throws std::length_error beyond 2^62.
std::uint64_t state_count(Dimensions dims);

/// Upper bound on explicitly enumerated state spaces.
struct StateSpaceGuard {
  std::uint64_t max_states = std::uint64_t{1} << 24;
  /// Throws BudgetExceeded when dims exceed the guard.
  void check(Dimensions dims) const;
};

/// Raised when an exhaustive procedure would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Calls f on every state in code order. Respects the guard.
void for_each_state(Dimensions dims, const std::function<void(const State&)>& f,
                    const StateSpaceGuard& guard = {});

/// Directed irreflexive influence graph. An edge (i, j) reads "j is
/// influenced by i".
class InfluenceNetwork {
 public:
  InfluenceNetwork() = default;
  /// Duplicate edges collapse. A self-loop or an out-of-range endpoint throws
  /// std::invalid_argument.
  InfluenceNetwork(std::uint32_t agents, const std::vector<std::pair<AgentId, AgentId>>& edges);

  static InfluenceNetwork complete(std::uint32_t agents);

  std::uint32_t agents() const { return static_cast<std::uint32_t>(in_masks_.size()); }
  bool has_edge(AgentId from, AgentId to) const;
  /// Bit mask of Inf(j).
  std::uint64_t influencer_mask(AgentId j) const { return in_masks_.at(j.value); }
  /// All edges in (from, to) lexicographic order.
  std::vector<std::pair<AgentId, AgentId>> edges() const;

 private:
  std::vector<std::uint64_t> in_masks_;
};

/// P_i: B_i(p) where V_i(p) = 1, unknown elsewhere. Throws std::out_of_range
/// for an unknown agent.
PublicOpinion public_opinion(const State& s, AgentId i);

/// Inf(j), in increasing index order.
std::vector<AgentId> influencers(const InfluenceNetwork& net, AgentId j);

/// Inf^S(i, p): influencers of i whose opinion on p is visible in s.
std::vector<AgentId> active_influencers(const State& s, const InfluenceNetwork& net, AgentId i, IssueId p);

/// S ~_i T.
bool indistinguishable(const State& s, const State& t, AgentId i);

/// S^{~_i}, in code order. The size is 2^h with h the number of hidden cells
/// of agents other than i.
std::vector<State> indistinguishability_class(const State& s, AgentId i);

/// Calls f on each member of S^{~_i} without materialising the class.
/// Stops early when f returns false; returns false in that case.
bool for_each_indistinguishable(const State& s, AgentId i, const std::function<bool(const State&)>& f);

/// Agent and issue names. Names map to dense indices at I/O boundaries.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> agents, std::vector<std::string> issues);

  /// A vocabulary that registers unseen names on lookup.
  static Vocabulary open();

  Dimensions dims() const {
    return {static_cast<std::uint32_t>(agents_.size()), static_cast<std::uint32_t>(issues_.size())};
  }
  bool is_open() const { return open_; }
  const std::vector<std::string>& agent_names() const { return agents_; }
  const std::vector<std::string>& issue_names() const { return issues_; }
  const std::string& agent_name(AgentId i) const { return agents_.at(i.value); }
  const std::string& issue_name(IssueId p) const { return issues_.at(p.value); }

  std::optional<AgentId> find_agent(std::string_view name) const;
  std::optional<IssueId> find_issue(std::string_view name) const;
  /// Like find_*, but an open vocabulary registers the name.
  std::optional<AgentId> resolve_agent(std::string_view name);
  std::optional<IssueId> resolve_issue(std::string_view name);

 private:
  std::vector<std::string> agents_;
  std::vector<std::string> issues_;
  bool open_ = false;
};

/// True for [A-Za-z0-9_]+.
bool is_valid_name(std::string_view name);

}  // namespace influence

template <>
struct std::hash<influence::State> {
  std::size_t operator()(const influence::State& s) const noexcept { return std::hash<std::uint64_t>{}(s.code()); }
};

#endif  // INFLUENCE_CORE_MODEL_HPP
