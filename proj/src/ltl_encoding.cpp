#include "influence/ltl_encoding.hpp"

#include <set>
#include <stdexcept>

namespace influence {

namespace {

// Balanced, so that encodings over thousands of states stay shallow.
template <typename F, typename Join>
F balanced(const std::vector<F>& items, std::size_t lo, std::size_t hi, Join join) {
  if (hi - lo == 1) return items[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return join(balanced(items, lo, mid, join), balanced(items, mid, hi, join));
}

TemporalFormula big_and(const std::vector<TemporalFormula>& items) {
  if (items.empty()) return lift(state_constant(true));
  return balanced(items, 0, items.size(),
                  [](const TemporalFormula& a, const TemporalFormula& b) { return conjunction(a, b); });
}

TemporalFormula big_or(const std::vector<TemporalFormula>& items) {
  if (items.empty()) return lift(state_constant(false));
  return balanced(items, 0, items.size(),
                  [](const TemporalFormula& a, const TemporalFormula& b) { return disjunction(a, b); });
}

StateFormula signed_atom(const StateFormula& atom, bool positive) { return positive ? atom : negation(atom); }

}  // namespace

StateFormula state_characteristic(const State& s) {
  const Dimensions d = s.dims();
  std::vector<StateFormula> lits;
  for (std::uint32_t i = 0; i < d.agents; ++i)
    for (std::uint32_t p = 0; p < d.issues; ++p)
      lits.push_back(signed_atom(belief_atom(AgentId{i}, IssueId{p}), s.belief(AgentId{i}, IssueId{p})));
  for (std::uint32_t i = 0; i < d.agents; ++i)
    for (std::uint32_t p = 0; p < d.issues; ++p)
      lits.push_back(signed_atom(visibility_atom(AgentId{i}, IssueId{p}), s.visible(AgentId{i}, IssueId{p})));
  return balanced(lits, 0, lits.size(),
                  [](const StateFormula& a, const StateFormula& b) { return conjunction(a, b); });
}

TemporalFormula action_effect(AgentId i, Action a) {
  switch (a.kind()) {
    case Action::Kind::Reveal: return next(lift(visibility_atom(i, a.issue())));
    case Action::Kind::Hide: return next(lift(negation(visibility_atom(i, a.issue()))));
    case Action::Kind::Skip: break;
  }
  return lift(state_constant(true));
}

TemporalFormula encode_strategy(AgentId i, Dimensions d, const std::function<Action(const State&)>& q,
                                const StateSpaceGuard& guard) {
  std::vector<TemporalFormula> clauses;
  for_each_state(
      d, [&](const State& s) { clauses.push_back(implies(lift(state_characteristic(s)), action_effect(i, q(s)))); },
      guard);
  return big_and(clauses);
}

TemporalFormula encode_profile(Dimensions d, const std::vector<std::function<Action(const State&)>>& profile,
                               const StateSpaceGuard& guard) {
  std::vector<TemporalFormula> parts;
  for (std::uint32_t i = 0; i < profile.size(); ++i) parts.push_back(encode_strategy(AgentId{i}, d, profile[i], guard));
  return big_and(parts);
}

TemporalFormula encode_unanimity(const InfluenceNetwork& net, AgentId i, IssueId p, bool positive) {
  const std::vector<AgentId> inf = influencers(net, i);
  if (inf.empty()) throw std::invalid_argument("unanimity encoding needs at least one influencer");
  auto next_visible = [&](AgentId j) { return next(lift(visibility_atom(j, p))); };
  const TemporalFormula own = lift(signed_atom(belief_atom(i, p), positive));

  std::vector<TemporalFormula> hidden, shown, agree, split;
  for (AgentId j : inf) {
    hidden.push_back(next(lift(negation(visibility_atom(j, p)))));
    shown.push_back(next_visible(j));
    agree.push_back(implies(next_visible(j), lift(signed_atom(belief_atom(j, p), positive))));
  }
  for (AgentId j : inf)
    for (AgentId z : inf)
      if (j != z)
        split.push_back(conjunction(conjunction(next_visible(j), next_visible(z)),
                                    lift(conjunction(belief_atom(j, p), negation(belief_atom(z, p))))));

  const TemporalFormula silent = conjunction(big_and(hidden), own);
  const TemporalFormula unanimous = conjunction(big_or(shown), big_and(agree));
  const TemporalFormula disagreement = conjunction(big_or(split), own);
  const TemporalFormula rhs = disjunction(disjunction(silent, unanimous), disagreement);
  const TemporalFormula lhs = next(own);
  return conjunction(implies(lhs, rhs), implies(rhs, lhs));
}

TemporalFormula encode_transition(const InfluenceNetwork& net, Dimensions d) {
  std::vector<TemporalFormula> parts;
  for (std::uint32_t i = 0; i < d.agents; ++i) {
    if (net.influencer_mask(AgentId{i}) == 0) continue;
    for (std::uint32_t p = 0; p < d.issues; ++p) {
      parts.push_back(encode_unanimity(net, AgentId{i}, IssueId{p}, true));
      parts.push_back(encode_unanimity(net, AgentId{i}, IssueId{p}, false));
    }
  }
  return big_and(parts);
}

PropositionTable::PropositionTable(const Vocabulary& vocab) : dims_(vocab.dims()) {
  auto build = [&](bool by_index) {
    entries_.clear();
    for (int kind = 0; kind < 2; ++kind)
      for (std::uint32_t i = 0; i < dims_.agents; ++i)
        for (std::uint32_t p = 0; p < dims_.issues; ++p) {
          const AgentId a{i};
          const IssueId q{p};
          const std::string agent = by_index ? std::to_string(i) : vocab.agent_name(a);
          const std::string issue = by_index ? std::to_string(p) : vocab.issue_name(q);
          entries_.push_back({std::string(kind == 0 ? "b_" : "v_") + agent + "_" + issue, kind == 0, a, q});
        }
    std::set<std::string> names;
    for (const Entry& e : entries_)
      if (!names.insert(e.name).second) return false;
    return true;
  };
  if (!build(false)) build(true);
}

const std::string& PropositionTable::name(bool belief, AgentId i, IssueId p) const {
  const std::size_t offset = belief ? 0 : dims_.cells();
  return entries_.at(offset + dims_.cell(i, p)).name;
}

std::optional<StateFormula> PropositionTable::atom(std::string_view name) const {
  for (const Entry& e : entries_)
    if (e.name == name) return e.belief ? belief_atom(e.agent, e.issue) : visibility_atom(e.agent, e.issue);
  return std::nullopt;
}

AtomResolver PropositionTable::resolver() const {
  return [this](std::string_view name) { return atom(name); };
}

std::string PropositionTable::sidecar(const Vocabulary& vocab) const {
  std::string out;
  for (const Entry& e : entries_)
    out += e.name + (e.belief ? " bel " : " vis ") + vocab.agent_name(e.agent) + " " + vocab.issue_name(e.issue) + "\n";
  return out;
}

namespace {

class ExportAtoms final : public AtomPrinter {
 public:
  explicit ExportAtoms(const PropositionTable& table) : table_(table) {}
  std::string belief(AgentId i, IssueId p) const override { return table_.name(true, i, p); }
  std::string visible(AgentId i, IssueId p) const override { return table_.name(false, i, p); }
  std::string knows_prefix(AgentId) const override {
    throw std::invalid_argument("cannot export a formula with a knowledge operator; reduce it first");
  }

 private:
  const PropositionTable& table_;
};

}  // namespace

std::string export_formula(const TemporalFormula& phi, const PropositionTable& table) {
  if (phi.has_knowledge())
    throw std::invalid_argument("cannot export a formula with a knowledge operator; reduce it first");
  return to_string(phi, ExportAtoms(table));
}

}  // namespace influence
