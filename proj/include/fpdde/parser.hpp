#pragma once

#include <optional>
#include <string>

#include "fpdde/expr.hpp"

namespace fpdde {

/* Expression grammar (precedence low to high): addition/subtraction;
   multiplication and implicit juxtaposition (permitted between a numeric
   literal and a variable/symbol/constant, as in `2z1` or `2pi`, never
   between two alphabetic atoms); unary minus; power `^` with a bare
   integer-literal exponent; atoms. Atoms: integer literals, rationals
   `p/q` (the only use of `/`), `i`, `pi`, variables `z1`..`z{m}`,
   declared symbol names, `sin(...)`, `cos(...)`, `exp(...)`, parens.

   Errors carry a SourceSpan into `text`. */
ExprPtr parse_expr(const std::string& text, int m, const SymbolRegistry& symbols);
ExprPtr parse_expr(const std::string& text, int m);

/* Canonical printing; parse_expr(print_expr(e)) is structurally equal to e
   for any builder-produced tree (offset-carrying symbols print with a
   diagnostic @[...] tag and do not reparse). */
std::string print_expr(const ExprPtr& e);

/* Parses text that must fold to a single constant. */
Scalar parse_scalar(const std::string& text);

/* One declaration line:
     symbol g1 depends [z2,z3] shift (0,2pi,2pi) adds 0
   The shift/adds clause is optional (a bare declaration has no rules), and
   an optional trailing `model "<expr>"` names a concrete function of
   z2..zm used by numeric verification. Further lines with the same name
   contribute extra rules. */
struct SymbolDecl {
    std::string name;
    std::set<int> depends;
    std::vector<ShiftRule> rules;
    std::optional<std::string> model_text;
};
SymbolDecl parse_symbol_decl(const std::string& line, int m);

std::string print_poly(const Polynomial& p, const SymbolRegistry& symbols);

}  // namespace fpdde
