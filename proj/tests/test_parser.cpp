// Expression language: grammar fixtures, precedence, exact literals, byte
// offsets on every rejection, and the format/parse round trip.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "freereg/errors.hpp"
#include "freereg/parser.hpp"
#include "freereg/rng.hpp"
#include "helpers.hpp"

using freereg::NcPoly;
using freereg::Scalar;
using freereg::Word;

namespace {

NcPoly gen(int n, int j) { return NcPoly::generator(n, j); }

// Expects a rejection and hands back the reported byte offset.
std::size_t offset_of(const std::string& text) {
  try {
    freereg::parse_poly(text);
  } catch (const freereg::ParseError& e) {
    return e.offset();
  }
  FAIL("no parse error for: ", text);
  return static_cast<std::size_t>(-1);
}

}  // namespace

TEST_CASE("accepted forms") {
  int n = 2;
  NcPoly x1 = gen(n, 1), x2 = gen(n, 2);

  CHECK(freereg::parse_poly("x1*x2 + 2*x2*x1") == x1 * x2 + Scalar(2) * (x2 * x1));
  CHECK(freereg::parse_poly("(x1+x2)^2") == (x1 + x2) * (x1 + x2));
  CHECK(freereg::parse_poly("adj(x1*x2)") == x2 * x1);
  CHECK(freereg::parse_poly("adj(i*x1)", 1) == -Scalar::imaginary_unit() * gen(1, 1));
  CHECK(freereg::parse_poly("1/2*x1^2 - 3*x2") ==
        Scalar::ratio(1, 2) * (x1 * x1) - Scalar(3) * x2);
  CHECK(freereg::parse_poly("2.5*x1", 2) == Scalar::ratio(5, 2) * x1);
  CHECK(freereg::parse_poly("0.125", 1) == NcPoly::constant(1, Scalar::ratio(1, 8)));
  // regression: leading-zero decimals must stay base-10 ("08" is not octal)
  CHECK(freereg::parse_poly("0.8*x1", 1) == Scalar::ratio(4, 5) * gen(1, 1));
  CHECK(freereg::parse_poly("3/4", 1) == NcPoly::constant(1, Scalar::ratio(3, 4)));
  CHECK(freereg::parse_poly("i*x1 - i*x1", 1).is_zero());
  CHECK(freereg::parse_poly("x1^0", 1) == NcPoly::constant(1, Scalar(1)));
  CHECK(freereg::parse_poly("  x1  ", 1) == gen(1, 1));
}

TEST_CASE("precedence fixtures") {
  int n = 2;
  NcPoly x1 = gen(n, 1), x2 = gen(n, 2);

  // unary minus binds looser than '^': -x1^2 is -(x1^2)
  CHECK(freereg::parse_poly("-x1^2 + x2") == -(x1 * x1) + x2);
  CHECK(freereg::parse_poly("2*x1^2", 2) == Scalar(2) * (x1 * x1));
  CHECK(freereg::parse_poly("x1^2*x2") == x1 * x1 * x2);
  CHECK(freereg::parse_poly("x1 - x2 - x1", 2) == -x2);  // left-assoc chain
  CHECK(freereg::parse_poly("-2*x1", 1) == Scalar(-2) * gen(1, 1));
  CHECK(freereg::parse_poly("(x1+x2)^2 - x1^2 - x2^2") == x1 * x2 + x2 * x1);
}

TEST_CASE("rejections carry byte offsets") {
  CHECK(offset_of("x1 x2") == 3);        // juxtaposition: '*' required
  CHECK(offset_of("x0") == 0);           // indices start at 1
  CHECK(offset_of("x1^^2") == 3);
  CHECK(offset_of("x1^(2)") == 3);       // exponent must be a bare integer
  CHECK(offset_of("x1^-2") == 3);
  CHECK(offset_of("x1^2^3") == 4);       // towers need parentheses
  CHECK(offset_of("x1/x2") == 2);        // '/' only inside rational literals; error at the slash
  CHECK(offset_of("(x1+x2") == 6);       // unbalanced
  CHECK(offset_of(")") == 0);
  CHECK(offset_of("") == 0);
  CHECK(offset_of("   ") == 3);
  CHECK(offset_of("x1 + ") == 5);
  CHECK(offset_of("3/0") == 1);          // zero denominator, reported at the slash
  CHECK(offset_of("x1 @ x2") == 3);      // unknown byte
  CHECK(offset_of("adj x1") == 4);       // adj requires parentheses
  CHECK(offset_of("x100") == 0);         // generator index cap

  try {
    freereg::parse_poly("x1 + $");
    FAIL("expected rejection");
  } catch (const freereg::ParseError& e) {
    CHECK(e.offset() == 5);
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
}

TEST_CASE("variable-count handling") {
  CHECK(freereg::parse_poly("x3").var_count() == 3);  // inferred
  CHECK(freereg::parse_poly("7").var_count() == 1);   // constants still live somewhere
  CHECK(freereg::parse_poly("x1", 5).var_count() == 5);
  CHECK_THROWS_AS(freereg::parse_poly("x3", 2), freereg::DimensionError);

  freereg::ExprPtr ast = freereg::parse_expr("x2*x7");
  CHECK(freereg::max_var_index(*ast) == 7);
}

TEST_CASE("expansion budget refuses exponential blowups") {
  CHECK_THROWS_AS(freereg::parse_poly("(x1+x2)^25"), freereg::BudgetError);
}

TEST_CASE("canonical formatting") {
  int n = 2;
  NcPoly x1 = gen(n, 1), x2 = gen(n, 2);

  CHECK(freereg::format(NcPoly::zero(1)) == "0");
  CHECK(freereg::format(Scalar(2) * (x1 * x2) + x1) == "x1 + 2*x1*x2");
  CHECK(freereg::format(-x1) == "-x1");
  CHECK(freereg::format(Scalar::ratio(-1, 2) * x1) == "-1/2*x1");
  CHECK(freereg::format(Scalar::imaginary_unit() * x1) == "i*x1");
  CHECK(freereg::format(NcPoly::constant(1, Scalar(mpq_class(1), mpq_class(-2)))) ==
        "(1 - 2*i)");
}

TEST_CASE("round trip: 500 random polynomials") {
  freereg::RngStream rng(60601);
  for (int rep = 0; rep < 500; ++rep) {
    int n = 1 + static_cast<int>(rng.next_u64() % 4);
    NcPoly p = testutil::random_poly(rng, n, 5, 6);
    std::string text = freereg::format(p);
    CHECK(freereg::parse_poly(text, n) == p);
  }
}
