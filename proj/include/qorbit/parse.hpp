// parse.hpp — text form of symbols.
//
// Grammar:
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := number | 'i' | pvar ['^' nat] | 'exp' '(' linform ')' | '(' expr ')'
//   linform := ['+'|'-'] lterm (('+'|'-') lterm)*
//   lterm   := [number ['*']] ['i' ['*']] posvar | number | 'i'
//
// p-variables appear as monomial factors; position variables only inside
// exp(...). parse(format(s)) == s for canonical s.
#pragma once

#include <string_view>

#include "qorbit/symbol.hpp"

namespace qorbit {

ExpPolySymbol parse_symbol(std::string_view text, const VariableSpace& space);

}  // namespace qorbit
