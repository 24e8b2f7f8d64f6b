#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qtkit/poly.hpp"

namespace qtkit {

// Report/grammar form of a scalar: "3", "-1/2", "i", "2/3*i", "(1+2*i)".
std::string format_scalar(const Scalar& s);

// Canonical textual form, terms in descending graded-lex order. Round-trips
// through parse_poly for every polynomial.
std::string format_poly(const Poly& p);

// Recursive-descent parser for
//   expr     := ('+'|'-')? term (('+'|'-') term)*
//   term     := factor ('*' factor)*
//   factor   := base ('^' nat)?
//   base     := rational | 'i' | var | '(' expr ')'
//   var      := 'x' nat | 'y' nat
//   rational := int ('/' nat)?
// Variables resolve by name in ctx; implicit multiplication is not allowed;
// whitespace is insignificant. Errors carry line and column.
Poly parse_poly(std::string_view text, const VarContext& ctx);

// "[expr, expr, ...]" -> component list, each parsed in ctx.
std::vector<Poly> parse_poly_list(std::string_view text, const VarContext& ctx);

} // namespace qtkit
