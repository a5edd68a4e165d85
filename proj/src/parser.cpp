#include "freereg/parser.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "freereg/errors.hpp"
#include "freereg/trace.hpp"

namespace freereg {

namespace {

struct Token {
  enum class Kind { number, imag_unit, variable, plus, minus, star, caret, lparen, rparen, adj, end };
  Kind kind = Kind::end;
  std::size_t offset = 0;
  mpq_class value;          // number
  bool integral = false;    // number came as bare digits (usable as exponent)
  int var_index = 0;        // variable

  static Token simple(Kind k, std::size_t at) {
    Token t;
    t.kind = k;
    t.offset = at;
    return t;
  }
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      std::size_t at = pos_;
      if (pos_ >= text_.size()) {
        out.push_back(Token::simple(Token::Kind::end, at));
        return out;
      }
      char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        out.push_back(number(at));
      } else if (c == 'x') {
        out.push_back(variable(at));
      } else if (c == 'i') {
        ++pos_;
        out.push_back(Token::simple(Token::Kind::imag_unit, at));
      } else if (c == 'a') {
        if (text_.substr(pos_, 3) == "adj") {
          pos_ += 3;
          out.push_back(Token::simple(Token::Kind::adj, at));
        } else {
          throw ParseError("unknown name (did you mean 'adj'?)", at);
        }
      } else if (c == '+') {
        ++pos_;
        out.push_back(Token::simple(Token::Kind::plus, at));
      } else if (c == '-') {
        ++pos_;
        out.push_back(Token::simple(Token::Kind::minus, at));
      } else if (c == '*') {
        ++pos_;
        out.push_back(Token::simple(Token::Kind::star, at));
      } else if (c == '^') {
        ++pos_;
        out.push_back(Token::simple(Token::Kind::caret, at));
      } else if (c == '(') {
        ++pos_;
        out.push_back(Token::simple(Token::Kind::lparen, at));
      } else if (c == ')') {
        ++pos_;
        out.push_back(Token::simple(Token::Kind::rparen, at));
      } else if (c == '/') {
        throw ParseError("'/' only divides rational literals like 3/4", at);
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", at);
      }
    }
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string digits() {
    std::string out;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      out += text_[pos_++];
    return out;
  }

  Token number(std::size_t at) {
    std::string intpart = digits();
    Token t = Token::simple(Token::Kind::number, at);
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      std::string fracpart = digits();
      if (fracpart.empty()) throw ParseError("decimal point needs digits after it", pos_);
      // 12.345 -> 12345 / 10^3, exactly. Base 10 forced: gmp's default base 0
      // would read a leading zero ("0125") as octal.
      mpz_class num(intpart + fracpart, 10);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, fracpart.size());
      t.value = mpq_class(num, den);
      t.value.canonicalize();
    } else if (pos_ < text_.size() && text_[pos_] == '/') {
      std::size_t slash = pos_;
      ++pos_;
      std::string denpart = digits();
      if (denpart.empty()) throw ParseError("'/' in a rational literal needs digits after it", pos_);
      mpz_class den(denpart, 10);
      if (den == 0) throw ParseError("rational literal divides by zero", slash);
      t.value = mpq_class(mpz_class(intpart, 10), den);
      t.value.canonicalize();
    } else {
      t.value = mpq_class(mpz_class(intpart, 10));
      t.integral = true;
    }
    return t;
  }

  Token variable(std::size_t at) {
    ++pos_;  // consume 'x'
    std::string index = digits();
    if (index.empty()) throw ParseError("variable needs an index, like x1", at);
    if (index.size() > 2) throw ParseError("variable index must be between 1 and 99", at);
    int idx = std::stoi(index);
    if (idx < 1) throw ParseError("variable index must be between 1 and 99", at);
    Token t = Token::simple(Token::Kind::variable, at);
    t.var_index = idx;
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ExprPtr run() {
    ExprPtr e = expr();
    if (peek().kind != Token::Kind::end)
      throw ParseError("unexpected token; an explicit '*' may be missing", peek().offset);
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }
  bool at(Token::Kind k) const { return peek().kind == k; }

  ExprPtr expr() {
    ExprPtr left = term();
    while (at(Token::Kind::plus) || at(Token::Kind::minus)) {
      bool minus = take().kind == Token::Kind::minus;
      ExprPtr right = term();
      Expr node;
      node.kind = minus ? Expr::Kind::sub : Expr::Kind::add;
      node.a = std::move(left);
      node.b = std::move(right);
      left = make(std::move(node));
    }
    return left;
  }

  ExprPtr term() {
    ExprPtr left = factor();
    while (at(Token::Kind::star)) {
      take();
      ExprPtr right = factor();
      Expr node;
      node.kind = Expr::Kind::mul;
      node.a = std::move(left);
      node.b = std::move(right);
      left = make(std::move(node));
    }
    return left;
  }

  ExprPtr factor() {
    if (at(Token::Kind::minus)) {
      take();
      Expr node;
      node.kind = Expr::Kind::neg;
      node.a = factor();
      return make(std::move(node));
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (!at(Token::Kind::caret)) return base;
    std::size_t caret_at = take().offset;
    if (!at(Token::Kind::number) || !peek().integral)
      throw ParseError("exponent must be a bare nonnegative integer", peek().offset);
    const Token& exp_tok = take();
    if (exp_tok.value.get_num() > 1000000)
      throw ParseError("exponent too large", exp_tok.offset);
    Expr node;
    node.kind = Expr::Kind::pow;
    node.exponent = static_cast<int>(exp_tok.value.get_num().get_si());
    node.a = std::move(base);
    if (at(Token::Kind::caret))
      throw ParseError("'^' is non-associative; parenthesize nested powers", peek().offset);
    (void)caret_at;
    return make(std::move(node));
  }

  ExprPtr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::number: {
        take();
        Expr node;
        node.kind = Expr::Kind::constant;
        node.value = Scalar(t.value);
        return make(std::move(node));
      }
      case Token::Kind::imag_unit: {
        take();
        Expr node;
        node.kind = Expr::Kind::constant;
        node.value = Scalar::imaginary_unit();
        return make(std::move(node));
      }
      case Token::Kind::variable: {
        take();
        Expr node;
        node.kind = Expr::Kind::variable;
        node.var_index = t.var_index;
        return make(std::move(node));
      }
      case Token::Kind::lparen: {
        take();
        ExprPtr inner = expr();
        if (!at(Token::Kind::rparen)) throw ParseError("expected ')'", peek().offset);
        take();
        return inner;
      }
      case Token::Kind::adj: {
        take();
        if (!at(Token::Kind::lparen)) throw ParseError("adj needs parentheses: adj(...)", peek().offset);
        take();
        ExprPtr inner = expr();
        if (!at(Token::Kind::rparen)) throw ParseError("expected ')'", peek().offset);
        take();
        Expr node;
        node.kind = Expr::Kind::adj;
        node.a = std::move(inner);
        return make(std::move(node));
      }
      default:
        throw ParseError("expected a number, variable, 'i', '(' or 'adj('", t.offset);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

void collect_max_index(const Expr& e, int& best) {
  if (e.kind == Expr::Kind::variable) best = std::max(best, e.var_index);
  if (e.a) collect_max_index(*e.a, best);
  if (e.b) collect_max_index(*e.b, best);
}

// A product can hold up to |a| * |b| monomials; refuse before allocating
// them rather than after.  Collapsing products may be rejected early, but a
// CLI expression that dense was a mistake anyway.
NcPoly checked_mul(const NcPoly& a, const NcPoly& b) {
  if (a.terms().size() * b.terms().size() > kDefaultMomentBudget)
    throw BudgetError("expression would expand to roughly " +
                      std::to_string(a.terms().size() * b.terms().size()) +
                      " terms, past the budget of " + std::to_string(kDefaultMomentBudget));
  return a * b;
}

NcPoly lower_node(const Expr& e, int n) {
  switch (e.kind) {
    case Expr::Kind::constant:
      return e.value.is_zero() ? NcPoly::zero(n) : NcPoly::constant(n, e.value);
    case Expr::Kind::variable:
      if (e.var_index > n)
        throw DimensionError("expression uses x" + std::to_string(e.var_index) +
                             " but only " + std::to_string(n) + " generators are available");
      return NcPoly::generator(n, e.var_index);
    case Expr::Kind::add:
      return lower_node(*e.a, n) + lower_node(*e.b, n);
    case Expr::Kind::sub:
      return lower_node(*e.a, n) - lower_node(*e.b, n);
    case Expr::Kind::neg:
      return -lower_node(*e.a, n);
    case Expr::Kind::mul:
      return checked_mul(lower_node(*e.a, n), lower_node(*e.b, n));
    case Expr::Kind::pow: {
      NcPoly base = lower_node(*e.a, n);
      NcPoly acc = NcPoly::constant(n, Scalar(1));
      for (int k = 0; k < e.exponent; ++k) acc = checked_mul(acc, base);
      return acc;
    }
    case Expr::Kind::adj:
      return lower_node(*e.a, n).adjoint();
  }
  throw Error("lower: unreachable expression kind");
}

// --- formatting ---------------------------------------------------------

std::string ratio_text(const mpq_class& q) {
  std::string num = q.get_num().get_str();
  if (q.get_den() == 1) return num;
  return num + "/" + q.get_den().get_str();
}

// Body of one term without its leading sign; sign_out gets -1 or +1.
std::string term_body(const Word& w, const Scalar& c, int& sign_out) {
  std::string word = w.empty() ? std::string() : word_text(w);
  if (c.is_real()) {
    sign_out = sgn(c.re()) < 0 ? -1 : 1;
    mpq_class mag = abs(c.re());
    if (word.empty()) return ratio_text(mag);
    if (mag == 1) return word;
    return ratio_text(mag) + "*" + word;
  }
  if (sgn(c.re()) == 0) {  // purely imaginary
    sign_out = sgn(c.im()) < 0 ? -1 : 1;
    mpq_class mag = abs(c.im());
    std::string coeff = (mag == 1) ? "i" : ratio_text(mag) + "*i";
    if (word.empty()) return coeff;
    return coeff + "*" + word;
  }
  // Mixed real and imaginary part: parenthesize the constant.
  sign_out = 1;
  std::string inner = ratio_text(c.re());
  inner += sgn(c.im()) < 0 ? " - " : " + ";
  mpq_class mag = abs(c.im());
  inner += (mag == 1) ? "i" : ratio_text(mag) + "*i";
  std::string coeff = "(" + inner + ")";
  if (word.empty()) return coeff;
  return coeff + "*" + word;
}

}  // namespace

ExprPtr parse_expr(std::string_view text) {
  Lexer lexer(text);
  Parser parser(lexer.run());
  return parser.run();
}

int max_var_index(const Expr& e) {
  int best = 0;
  collect_max_index(e, best);
  return best;
}

NcPoly lower(const Expr& e, int n) {
  if (n < 1) throw InvalidArgumentError("lower: need at least one generator");
  return lower_node(e, n);
}

NcPoly parse_poly(std::string_view text, int n) {
  ExprPtr e = parse_expr(text);
  if (n == 0) n = std::max(1, max_var_index(*e));
  return lower(*e, n);
}

std::string format(const NcPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    int sign = 1;
    std::string body = term_body(w, c, sign);
    if (first) {
      if (sign < 0) out += "-";
      out += body;
      first = false;
    } else {
      out += sign < 0 ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

}  // namespace freereg
