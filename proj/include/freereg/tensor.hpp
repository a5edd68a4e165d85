#pragma once

#include <map>
#include <utility>

#include "freereg/poly.hpp"
#include "freereg/scalar.hpp"
#include "freereg/word.hpp"

namespace freereg {

/*
 * Element of A (x) A for A the algebra of polynomials in n noncommuting
 * generators: a finite sum  sum_k c_k (u_k (x) v_k)  of simple tensors of
 * monomials, held canonically (deg-lex ordered keys, no zero coefficients).
 * This is the home of difference quotients and of the coefficients of
 * one-sided derivations.
 */
class TensorPoly {
 public:
  using Key = std::pair<Word, Word>;
  using TermMap = std::map<Key, Scalar, PairDegLexLess>;

  explicit TensorPoly(int var_count) : n_(var_count) {
    if (var_count < 1) throw InvalidArgumentError("tensor needs at least one generator");
  }

  static TensorPoly elementary(int n, Word left, Word right, Scalar c = Scalar(1)) {
    TensorPoly t(n);
    t.add_term(std::move(left), std::move(right), std::move(c));
    return t;
  }

  // P (x) Q as an element of A (x) A.
  static TensorPoly tensor_of(const NcPoly& p, const NcPoly& q);

  int var_count() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Word left, Word right, Scalar c) {
    if (c.is_zero()) return;
    for (int letter : left) check_letter(letter);
    for (int letter : right) check_letter(letter);
    Key key{std::move(left), std::move(right)};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(std::move(key), std::move(c));
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  TensorPoly& operator+=(const TensorPoly& o) {
    check_same_vars(o);
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
  }
  TensorPoly& operator-=(const TensorPoly& o) {
    check_same_vars(o);
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
    return *this;
  }

  friend TensorPoly operator+(TensorPoly a, const TensorPoly& b) { return a += b; }
  friend TensorPoly operator-(TensorPoly a, const TensorPoly& b) { return a -= b; }
  friend TensorPoly operator-(const TensorPoly& a) {
    TensorPoly out(a.n_);
    for (const auto& [k, c] : a.terms_) out.terms_.emplace(k, -c);
    return out;
  }
  friend TensorPoly operator*(const Scalar& s, TensorPoly t) {
    if (s.is_zero()) return TensorPoly(t.n_);
    TermMap scaled;
    for (auto& [k, c] : t.terms_) {
      Scalar v = s * c;
      if (!v.is_zero()) scaled.emplace(k, std::move(v));
    }
    t.terms_ = std::move(scaled);
    return t;
  }

  friend bool operator==(const TensorPoly& a, const TensorPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const TensorPoly& a, const TensorPoly& b) { return !(a == b); }

 private:
  void check_letter(int letter) const {
    if (letter < 1 || letter > n_)
      throw DimensionError("generator index " + std::to_string(letter) + " outside 1.." +
                           std::to_string(n_));
  }
  void check_same_vars(const TensorPoly& o) const {
    if (n_ != o.n_)
      throw DimensionError("mixing tensors over " + std::to_string(n_) + " and " +
                           std::to_string(o.n_) + " generators");
  }

  int n_;
  TermMap terms_;
};

}  // namespace freereg
