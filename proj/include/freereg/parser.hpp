#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "freereg/poly.hpp"

namespace freereg {

/*
 * Expression grammar over generators x1..x99:
 *
 *   expr     := term (('+' | '-') term)*
 *   term     := factor ('*' factor)*
 *   factor   := '-' factor | power
 *   power    := atom ('^' natural)?        -- non-associative
 *   atom     := rational | 'i' | variable | '(' expr ')' | 'adj' '(' expr ')'
 *   rational := digits ('.' digits | '/' digits)?
 *   variable := 'x' digits
 *
 * Multiplication is always explicit; '/' only forms rational literals;
 * decimals are exact (2.5 is the rational 5/2).  Errors carry the byte
 * offset of the offending token.
 */
struct Expr {
  enum class Kind { constant, variable, add, sub, neg, mul, pow, adj };
  Kind kind;
  Scalar value;       // constant
  int var_index = 0;  // variable
  int exponent = 0;   // pow
  std::shared_ptr<const Expr> a, b;
};

using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr parse_expr(std::string_view text);

// Largest generator index mentioned (0 if none).
int max_var_index(const Expr& e);

// Evaluate the tree into a polynomial over n generators; every variable used
// must satisfy index <= n.  Guards against runaway expansion with a term
// budget shared with the moment engine.
NcPoly lower(const Expr& e, int n);

// parse + lower in one step; n == 0 means infer max(1, largest index used).
NcPoly parse_poly(std::string_view text, int n = 0);

// Canonical display form; parse_poly(format(p), p.var_count()) == p exactly.
std::string format(const NcPoly& p);

}  // namespace freereg
