#pragma once

#include "minsurf/contact_expr.hpp"
#include "minsurf/jet.hpp"

#include <string>
#include <string_view>

namespace minsurf {

// Grammar (whitespace insignificant):
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := power (('*'|'/') power)*
//   power  := primary ['^' nonneg-int]
//   primary:= integer | 'p' | 'q' | 'atan(p)' | 'arctan(p)' | '(' expr ')'
// A divisor must normalize to r*(1+p^2)^k with r a nonzero rational, so
// "3/2" and "/(6*(1+p^2)^4)" are both accepted. Throws ParseError.
ContactExpr parse(std::string_view text);

// Same grammar with the extra identifiers x, y, u (affine only).
JetFunction parse_jet(std::string_view text);

// Canonical text; parse(format(e)) == e.
std::string format(const ContactExpr &e);
std::string format(const PolyP &poly);
std::string format_jet(const JetFunction &f);

} // namespace minsurf
