#ifndef INFLUENCE_PARSER_HPP
#define INFLUENCE_PARSER_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "influence/formula.hpp"

namespace influence {

/// Syntax, layer or name error. position() is a 0-based byte offset into the
/// parsed text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }
  /// The message without the "position N:" prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::size_t position_;
  std::string detail_;
};

/// Maps a bare identifier (not a keyword) to an atom, e.g. `b_1_p` from an
/// exported proposition table.
using AtomResolver = std::function<std::optional<StateFormula>(std::string_view)>;

/// Parses a goal formula.
///
///   implies := or ('->' implies)?
///   or      := and ('|' and)*
///   and     := until ('&' until)*
///   until   := unary ('U' unary)*
///   unary   := ('!' | 'X' | 'F' | 'G' | 'K[' name ']') unary | primary
///   primary := 'B[' name ',' name ']' | 'V[' name ',' name ']'
///            | 'true' | 'false' | identifier | '(' implies ')'
///
/// Under K an implication a -> b is read as !a | b, since the state layer has
/// no implication node. Names are looked up in vocab; an open vocabulary
/// registers new names.
TemporalFormula parse_formula(std::string_view text, Vocabulary& vocab, const AtomResolver& atoms = {});

/// Parses a formula that must not use X, U, F or G.
StateFormula parse_state_formula(std::string_view text, Vocabulary& vocab, const AtomResolver& atoms = {});

struct FormulaLine {
  std::size_t line = 0;  ///< 1-based
  std::string text;
  TemporalFormula formula;
};

/// One formula per line; `#` starts a comment; blank lines are skipped.
/// Errors are rethrown with the line number in the message.
std::vector<FormulaLine> parse_formula_file(std::string_view text, Vocabulary& vocab,
                                            const AtomResolver& atoms = {});

}  // namespace influence

#endif  // INFLUENCE_PARSER_HPP
