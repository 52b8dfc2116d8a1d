#include "influence/strategy.hpp"

#include <limits>
#include <stdexcept>

#include "influence/evaluator.hpp"

namespace influence {

ClassKey class_key(const State& s, AgentId i) {
  const std::uint32_t seen = s.dims().agent_mask(i) | s.visibility_bits();
  return {s.belief_bits() & seen, s.visibility_bits()};
}

std::uint64_t class_count(Dimensions d) {
  std::uint64_t total = 1;
  const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
  auto mul = [&](std::uint64_t f) { total = total > cap / f ? cap : total * f; };
  for (std::uint32_t p = 0; p < d.issues; ++p) mul(4);
  for (std::uint32_t c = 0; c < d.cells() - d.issues; ++c) mul(3);
  return total;
}

namespace {
std::uint32_t digit_radix(Dimensions d, AgentId i, std::uint32_t cell) { return cell / d.issues == i.value ? 4 : 3; }
}  // namespace

std::uint64_t class_index(const State& s, AgentId i) {
  const Dimensions d = s.dims();
  std::uint64_t index = 0;
  for (std::uint32_t c = d.cells(); c-- > 0;) {
    const std::uint32_t b = (s.belief_bits() >> c) & 1u;
    const std::uint32_t v = (s.visibility_bits() >> c) & 1u;
    const std::uint32_t radix = digit_radix(d, i, c);
    const std::uint32_t digit = radix == 4 ? b + 2 * v : (v ? 1 + b : 0);
    index = index * radix + digit;
  }
  return index;
}

State class_representative(Dimensions d, AgentId i, std::uint64_t k) {
  std::uint32_t beliefs = 0, vis = 0;
  for (std::uint32_t c = 0; c < d.cells(); ++c) {
    const std::uint32_t radix = digit_radix(d, i, c);
    const auto digit = static_cast<std::uint32_t>(k % radix);
    k /= radix;
    std::uint32_t b, v;
    if (radix == 4) {
      b = digit & 1u;
      v = digit >> 1;
    } else {
      v = digit != 0;
      b = digit == 2;
    }
    beliefs |= b << c;
    vis |= v << c;
  }
  return State(d, beliefs, vis);
}

std::string format_class(Dimensions d, AgentId i, ClassKey key) {
  std::string beliefs = "(", vis = "(";
  for (std::uint32_t a = 0; a < d.agents; ++a) {
    if (a) {
      beliefs += ',';
      vis += ',';
    }
    for (std::uint32_t p = 0; p < d.issues; ++p) {
      const std::uint32_t c = d.cell(AgentId{a}, IssueId{p});
      const bool v = (key.visibility >> c) & 1u;
      const bool b = (key.beliefs >> c) & 1u;
      beliefs += (a == i.value || v) ? (b ? '1' : '0') : '?';
      vis += v ? '1' : '0';
    }
  }
  return beliefs + ")/" + vis + ")";
}

ClassKey parse_class(std::string_view text, Dimensions d, AgentId i) {
  auto bad = [&](const std::string& why) {
    return std::invalid_argument("class '" + std::string(text) + "': " + why);
  };
  // Reads "(x..,x..,...)" into one char per cell.
  auto matrix = [&](std::string_view m) {
    if (m.size() < 2 || m.front() != '(' || m.back() != ')') throw bad("expected a parenthesised matrix");
    m = m.substr(1, m.size() - 2);
    std::string cells;
    std::uint32_t rows = 0;
    while (true) {
      const std::size_t comma = m.find(',');
      const std::string_view row = m.substr(0, comma);
      if (row.size() != d.issues) throw bad("each row needs " + std::to_string(d.issues) + " entries");
      cells += row;
      ++rows;
      if (comma == std::string_view::npos) break;
      m = m.substr(comma + 1);
    }
    if (rows != d.agents) throw bad("expected " + std::to_string(d.agents) + " rows");
    return cells;
  };
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) throw bad("expected beliefs/visibility");
  const std::string b = matrix(text.substr(0, slash));
  const std::string v = matrix(text.substr(slash + 1));
  ClassKey key;
  for (std::uint32_t c = 0; c < d.cells(); ++c) {
    if (v[c] != '0' && v[c] != '1') throw bad("visibility entries must be 0 or 1");
    const bool own = c / d.issues == i.value;
    const bool visible = v[c] == '1';
    if (own || visible) {
      if (b[c] != '0' && b[c] != '1') throw bad("belief entry " + std::to_string(c) + " is observable, write 0 or 1");
    } else if (b[c] != '?') {
      throw bad("belief entry " + std::to_string(c) + " is hidden from the agent, write ?");
    }
    if (visible) key.visibility |= 1u << c;
    if (b[c] == '1') key.beliefs |= 1u << c;
  }
  return key;
}

Strategy Strategy::constant(AgentId i, Action a) {
  Strategy s;
  s.kind_ = Kind::Constant;
  s.agent_ = i;
  s.otherwise_ = a;
  return s;
}

Strategy Strategy::rules(AgentId i, std::vector<Rule> rules, Action otherwise) {
  Strategy s;
  s.kind_ = Kind::Rules;
  s.agent_ = i;
  s.otherwise_ = otherwise;
  for (const Rule& r : rules) s.known_.push_back(knows(i, r.condition));
  s.rules_ = std::move(rules);
  return s;
}

Strategy Strategy::dense(AgentId i, Dimensions d, std::vector<Action> actions) {
  if (actions.size() != class_count(d)) throw std::invalid_argument("dense strategy needs one action per class");
  Strategy s;
  s.kind_ = Kind::Dense;
  s.agent_ = i;
  s.dims_ = d;
  s.dense_ = std::make_shared<const std::vector<Action>>(std::move(actions));
  return s;
}

Strategy Strategy::table(AgentId i, Dimensions d, std::map<std::uint64_t, Action> entries, Action otherwise) {
  Strategy s;
  s.kind_ = Kind::Table;
  s.agent_ = i;
  s.dims_ = d;
  s.table_ = std::move(entries);
  s.otherwise_ = otherwise;
  return s;
}

Action Strategy::operator()(const State& s) const {
  switch (kind_) {
    case Kind::Constant: return otherwise_;
    case Kind::Rules:
      for (std::size_t r = 0; r < rules_.size(); ++r)
        if (eval_state(known_[r], s)) return rules_[r].action;
      return otherwise_;
    case Kind::Dense: return (*dense_)[class_index(s, agent_)];
    case Kind::Table: {
      const auto it = table_.find(class_key(s, agent_).code(s.dims()));
      return it == table_.end() ? otherwise_ : it->second;
    }
  }
  return otherwise_;
}

std::string Strategy::describe(const Vocabulary& vocab) const {
  switch (kind_) {
    case Kind::Constant: return to_string(otherwise_, vocab);
    case Kind::Rules: {
      std::string out;
      for (const Rule& r : rules_)
        out += "if " + to_string(r.condition, vocab) + " then " + to_string(r.action, vocab) + "; ";
      return out + "else " + to_string(otherwise_, vocab);
    }
    case Kind::Dense: {
      std::string out;
      for (std::uint64_t k = 0; k < dense_->size(); ++k) {
        if (k) out += "; ";
        const State rep = class_representative(dims_, agent_, k);
        out += format_class(dims_, agent_, class_key(rep, agent_)) + " " + to_string((*dense_)[k], vocab);
      }
      return out;
    }
    case Kind::Table: {
      std::string out;
      for (const auto& [code, action] : table_) {
        const State s = State::from_code(dims_, code);
        out += format_class(dims_, agent_, class_key(s, agent_)) + " " + to_string(action, vocab) + "; ";
      }
      return out + "else " + to_string(otherwise_, vocab);
    }
  }
  return {};
}

JointPolicy joint_policy(const StrategyProfile& profile) {
  return [profile](const State& s) {
    JointAction joint;
    joint.reserve(profile.size());
    for (const Strategy& q : profile) joint.push_back(q(s));
    return joint;
  };
}

Lasso induced_lasso(const State& s0, const StrategyProfile& profile, const InfluenceNetwork& net,
                    std::span<const RulePtr> rules, const StateSpaceGuard& guard) {
  if (profile.size() != s0.dims().agents) throw std::invalid_argument("profile must have one strategy per agent");
  return induced_lasso(s0, joint_policy(profile), net, rules, guard);
}

Strategy consensus_strategy(AgentId i, bool negative, IssueId p) {
  const Action agree = negative ? Action::hide(p) : Action::reveal(p);
  const Action other = negative ? Action::reveal(p) : Action::hide(p);
  return Strategy::rules(i, {{belief_atom(i, p), agree}}, other);
}

}  // namespace influence
