#pragma once

// Text syntax for terms:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := [rational ['*']] factor (['*'] factor)*  |  rational
//   factor := atom ['^' n]
//   atom   := ident | ?var | '1' | '{' expr ',' expr '}' | 'D(' expr ')'
//           | '<' expr ',' expr '>' | '(' expr ')'
// D(a) is read as {a,1} and <a,b> as {a,b} - (D(a) b - a D(b)).

#include <string>
#include <string_view>

#include "jbgp/core.hpp"
#include "jbgp/engine.hpp"

namespace jbgp {

class ParseError : public Error {
public:
  /// Positions are 1-based.
  ParseError(ErrorKind kind, const std::string &what, std::size_t offset, std::size_t line,
             std::size_t column);
  std::size_t offset() const { return offset_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t offset_, line_, column_;
};

/// Identifiers must be declared in the alphabet; ?name leaves become Vars
/// only when `allow_vars` is set.
Term parse_term(std::string_view src, const Alphabet &alphabet, bool allow_vars = false);

/// Canonical text of an element (same as Element::to_string).
std::string print(const Element &e, const Alphabet &alphabet);
std::string print(const Term &t, const Alphabet &alphabet);

/// "x1,x2" or "x1:even,t:odd" into an alphabet.
Alphabet parse_generators(const std::string &spec);

} // namespace jbgp
