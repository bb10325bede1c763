#pragma once

#include <string>
#include <string_view>

#include "umbral/expr.hpp"
#include "umbral/series.hpp"
#include "umbral/workspace.hpp"

namespace umbral {

/// Parses umbral notation against `ws`, registering constructed atoms:
///
///   expr    := ['-'] term (('+' | '-') term)*
///   term    := factor ('*' factor)*
///   factor  := dotted ['^' uint | '^.' ['-'] uint]
///   dotted  := postfix ['.' dotted]
///   postfix := primary '\''*
///   primary := number | ident | '(' expr ')' | 'E' '[' expr ']'
///            | 'bell' ['(' expr ')'] | 'inv' '(' expr ')' | 'bar' '(' expr ')'
///            | 'part' '(' expr [',' expr] ')' | 'comp' '(' expr ',' expr ')'
///
/// A number is uint or uint/uint. Identifiers name atoms or declared
/// indeterminates. Scalar subterms fold into a single coefficient. On
/// umbrae, "a - b" is a plus the inverse umbra of b. E[e] is the scalar E[e].
///
/// Constructed atoms are bound under their rendered names, so parsing the
/// same text twice yields the same atoms and render() is lossless.
Expr parse_expr(Workspace& ws, std::string_view text);

/// Canonical text for `e`; parse_expr(ws, render(ws, e)) == e for parsed e.
std::string render(const Workspace& ws, const Expr& e);

/// Parses a series in t: numbers, t, + - * /, ^ with an integer exponent,
/// exp(.) and log(.). Division needs a divisor with invertible constant term.
Series parse_series(std::string_view text, int order);

}  // namespace umbral
