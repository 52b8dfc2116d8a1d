#include "influence/parser.hpp"

#include <cctype>

namespace influence {

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("position " + std::to_string(position) + ": " + message),
      position_(position),
      detail_(message) {}

namespace {

enum class Tok { End, Name, LParen, RParen, LBracket, RBracket, Comma, Bang, Amp, Bar, Arrow };

struct Token {
  Tok kind = Tok::End;
  std::string_view text;
  std::size_t pos = 0;
};

bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// A subformula in both readings. `state` is absent once a temporal operator
// occurs inside; `temporal_pos` then points at the first one.
struct Parsed {
  std::optional<StateFormula> state;
  TemporalFormula temporal;
  std::size_t temporal_pos = 0;
};

class Parser {
 public:
  Parser(std::string_view text, Vocabulary& vocab, const AtomResolver& atoms)
      : text_(text), vocab_(vocab), atoms_(atoms) {
    advance();
  }

  Parsed parse_all() {
    Parsed p = implication();
    if (tok_.kind != Tok::End) fail(tok_.pos, "unexpected '" + std::string(tok_.text) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(std::size_t pos, const std::string& msg) const { throw ParseError(pos, msg); }

  void advance() {
    while (at_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[at_]))) ++at_;
    tok_ = Token{Tok::End, {}, at_};
    if (at_ >= text_.size()) return;
    const char c = text_[at_];
    auto single = [&](Tok k) {
      tok_ = Token{k, text_.substr(at_, 1), at_};
      ++at_;
    };
    switch (c) {
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '[': return single(Tok::LBracket);
      case ']': return single(Tok::RBracket);
      case ',': return single(Tok::Comma);
      case '!': return single(Tok::Bang);
      case '&': return single(Tok::Amp);
      case '|': return single(Tok::Bar);
      case '-':
        if (at_ + 1 < text_.size() && text_[at_ + 1] == '>') {
          tok_ = Token{Tok::Arrow, text_.substr(at_, 2), at_};
          at_ += 2;
          return;
        }
        break;
      default: break;
    }
    if (!name_char(c)) fail(at_, std::string("unexpected character '") + c + "'");
    const std::size_t start = at_;
    while (at_ < text_.size() && name_char(text_[at_])) ++at_;
    tok_ = Token{Tok::Name, text_.substr(start, at_ - start), start};
  }

  bool next_is_bracket() const {
    std::size_t k = at_;
    while (k < text_.size() && std::isspace(static_cast<unsigned char>(text_[k]))) ++k;
    return k < text_.size() && text_[k] == '[';
  }

  bool is_keyword(std::string_view name) const {
    return name == "X" || name == "F" || name == "G" || name == "U" || name == "true" || name == "false";
  }

  void expect(Tok kind, const char* what) {
    if (tok_.kind != kind) fail(tok_.pos, std::string("expected ") + what);
    advance();
  }

  std::string_view expect_name(const char* what) {
    if (tok_.kind != Tok::Name) fail(tok_.pos, std::string("expected ") + what);
    const std::string_view name = tok_.text;
    advance();
    return name;
  }

  AgentId agent_named(std::string_view name, std::size_t pos) {
    if (auto a = vocab_.resolve_agent(name)) return *a;
    fail(pos, "unknown agent '" + std::string(name) + "'");
  }

  IssueId issue_named(std::string_view name, std::size_t pos) {
    if (auto p = vocab_.resolve_issue(name)) return *p;
    fail(pos, "unknown issue '" + std::string(name) + "'");
  }

  static Parsed from_state(const StateFormula& s) { return Parsed{s, lift(s), 0}; }

  static Parsed temporal_only(TemporalFormula t, std::size_t pos) { return Parsed{std::nullopt, std::move(t), pos}; }

  // Combines two operands with a binary connective, keeping both readings.
  template <typename StateOpFn, typename TemporalFn>
  static Parsed combine(const Parsed& a, const Parsed& b, StateOpFn state_op, TemporalFn temporal_op) {
    Parsed out;
    out.temporal = temporal_op(a.temporal, b.temporal);
    if (a.state && b.state)
      out.state = state_op(*a.state, *b.state);
    else
      out.temporal_pos = a.state ? b.temporal_pos : a.temporal_pos;
    return out;
  }

  Parsed implication() {
    Parsed lhs = disjunctive();
    if (tok_.kind != Tok::Arrow) return lhs;
    advance();
    Parsed rhs = implication();
    return combine(
        lhs, rhs, [](const StateFormula& a, const StateFormula& b) { return disjunction(negation(a), b); },
        [](const TemporalFormula& a, const TemporalFormula& b) { return implies(a, b); });
  }

  Parsed disjunctive() {
    Parsed acc = conjunctive();
    while (tok_.kind == Tok::Bar) {
      advance();
      Parsed rhs = conjunctive();
      acc = combine(
          acc, rhs, [](const StateFormula& a, const StateFormula& b) { return disjunction(a, b); },
          [](const TemporalFormula& a, const TemporalFormula& b) { return disjunction(a, b); });
    }
    return acc;
  }

  Parsed conjunctive() {
    Parsed acc = until_chain();
    while (tok_.kind == Tok::Amp) {
      advance();
      Parsed rhs = until_chain();
      acc = combine(
          acc, rhs, [](const StateFormula& a, const StateFormula& b) { return conjunction(a, b); },
          [](const TemporalFormula& a, const TemporalFormula& b) { return conjunction(a, b); });
    }
    return acc;
  }

  Parsed until_chain() {
    Parsed acc = unary();
    while (tok_.kind == Tok::Name && tok_.text == "U") {
      const std::size_t pos = tok_.pos;
      advance();
      Parsed rhs = unary();
      acc = temporal_only(until(acc.temporal, rhs.temporal), acc.state ? pos : acc.temporal_pos);
    }
    return acc;
  }

  Parsed unary() {
    const std::size_t pos = tok_.pos;
    if (tok_.kind == Tok::Bang) {
      advance();
      Parsed inner = unary();
      Parsed out;
      out.temporal = negation(inner.temporal);
      if (inner.state) out.state = negation(*inner.state);
      out.temporal_pos = inner.temporal_pos;
      return out;
    }
    if (tok_.kind == Tok::Name) {
      const std::string_view name = tok_.text;
      if (name == "X" || name == "F" || name == "G") {
        advance();
        Parsed inner = unary();
        TemporalFormula t = name == "X" ? next(inner.temporal)
                            : name == "F" ? eventually(inner.temporal)
                                          : henceforth(inner.temporal);
        return temporal_only(std::move(t), pos);
      }
      if (name == "K" && next_is_bracket()) {
        advance();
        expect(Tok::LBracket, "'['");
        const std::size_t agent_pos = tok_.pos;
        const AgentId agent = agent_named(expect_name("agent name"), agent_pos);
        expect(Tok::RBracket, "']'");
        Parsed inner = unary();
        if (!inner.state) fail(inner.temporal_pos, "temporal operator under K");
        return from_state(knows(agent, *inner.state));
      }
    }
    return primary();
  }

  Parsed primary() {
    const std::size_t pos = tok_.pos;
    if (tok_.kind == Tok::LParen) {
      advance();
      Parsed inner = implication();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (tok_.kind != Tok::Name) {
      if (tok_.kind == Tok::End) fail(pos, "unexpected end of formula");
      fail(pos, "unexpected '" + std::string(tok_.text) + "'");
    }
    const std::string_view name = tok_.text;
    if (name == "true" || name == "false") {
      advance();
      return from_state(state_constant(name == "true"));
    }
    if ((name == "B" || name == "V") && next_is_bracket()) {
      advance();
      expect(Tok::LBracket, "'['");
      const std::size_t agent_pos = tok_.pos;
      const AgentId agent = agent_named(expect_name("agent name"), agent_pos);
      expect(Tok::Comma, "','");
      const std::size_t issue_pos = tok_.pos;
      const IssueId issue = issue_named(expect_name("issue name"), issue_pos);
      expect(Tok::RBracket, "']'");
      return from_state(name == "B" ? belief_atom(agent, issue) : visibility_atom(agent, issue));
    }
    if (is_keyword(name)) fail(pos, "unexpected '" + std::string(name) + "'");
    if (atoms_) {
      if (auto atom = atoms_(name)) {
        advance();
        return from_state(*atom);
      }
    }
    fail(pos, "unknown proposition '" + std::string(name) + "'");
  }

  std::string_view text_;
  Vocabulary& vocab_;
  const AtomResolver& atoms_;
  std::size_t at_ = 0;
  Token tok_;
};

}  // namespace

TemporalFormula parse_formula(std::string_view text, Vocabulary& vocab, const AtomResolver& atoms) {
  return Parser(text, vocab, atoms).parse_all().temporal;
}

StateFormula parse_state_formula(std::string_view text, Vocabulary& vocab, const AtomResolver& atoms) {
  Parsed p = Parser(text, vocab, atoms).parse_all();
  if (!p.state) throw ParseError(p.temporal_pos, "temporal operator in a state formula");
  return *p.state;
}

std::vector<FormulaLine> parse_formula_file(std::string_view text, Vocabulary& vocab, const AtomResolver& atoms) {
  std::vector<FormulaLine> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
    if (line.empty()) continue;
    try {
      out.push_back({line_no, std::string(line), parse_formula(line, vocab, atoms)});
    } catch (const ParseError& e) {
      throw ParseError(e.position(), "line " + std::to_string(line_no) + ": " + e.detail());
    }
  }
  return out;
}

}  // namespace influence
