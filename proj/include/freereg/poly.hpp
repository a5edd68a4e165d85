#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "freereg/errors.hpp"
#include "freereg/scalar.hpp"
#include "freereg/word.hpp"

namespace freereg {

// degree(0) has no honest value; expose a sentinel standing in for -infinity.
inline constexpr int kDegreeOfZero = std::numeric_limits<int>::min();

template <class C>
struct CoeffOps;

template <>
struct CoeffOps<Scalar> {
  static bool is_zero(const Scalar& c) { return c.is_zero(); }
  static Scalar conj(const Scalar& c) { return c.conj(); }
  static double abs(const Scalar& c) { return c.abs(); }
};

template <>
struct CoeffOps<std::complex<double>> {
  static bool is_zero(const std::complex<double>& c) {
    return c.real() == 0.0 && c.imag() == 0.0;
  }
  static std::complex<double> conj(const std::complex<double>& c) { return std::conj(c); }
  static double abs(const std::complex<double>& c) { return std::abs(c); }
};

/*
 * Polynomial in n noncommuting generators x1..xn over coefficient type C.
 * Terms live in a deg-lex ordered map and exact zeros are dropped on entry,
 * so the representation is canonical: equal values compare equal.
 */
template <class C>
class BasicPoly {
 public:
  using TermMap = std::map<Word, C, DegLexLess>;

  explicit BasicPoly(int var_count) : n_(var_count) {
    if (var_count < 1) throw InvalidArgumentError("polynomial needs at least one generator");
  }

  static BasicPoly zero(int n) { return BasicPoly(n); }

  static BasicPoly constant(int n, C c) {
    BasicPoly p(n);
    p.add_term(Word{}, std::move(c));
    return p;
  }

  static BasicPoly generator(int n, int j) {
    BasicPoly p(n);
    p.add_term(Word{j}, C(1));
    return p;
  }

  int var_count() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Word& w, C c) {
    if (CoeffOps<C>::is_zero(c)) return;
    for (int letter : w)
      if (letter < 1 || letter > n_)
        throw DimensionError("generator index " + std::to_string(letter) +
                             " outside 1.." + std::to_string(n_));
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_.emplace(w, std::move(c));
    } else {
      it->second += c;
      if (CoeffOps<C>::is_zero(it->second)) terms_.erase(it);
    }
  }

  C coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? C(0) : it->second;
  }

  BasicPoly& operator+=(const BasicPoly& o) {
    check_same_vars(o);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  BasicPoly& operator-=(const BasicPoly& o) {
    check_same_vars(o);
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }

  friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
  friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
  friend BasicPoly operator-(const BasicPoly& a) {
    BasicPoly out(a.n_);
    for (const auto& [w, c] : a.terms_) out.terms_.emplace(w, -c);
    return out;
  }

  friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
    a.check_same_vars(b);
    BasicPoly out(a.n_);
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) out.add_term(concat(wa, wb), ca * cb);
    return out;
  }

  friend BasicPoly operator*(const C& s, BasicPoly p) {
    if (CoeffOps<C>::is_zero(s)) return BasicPoly(p.n_);
    TermMap scaled;
    for (auto& [w, c] : p.terms_) {
      C v = s * c;
      if (!CoeffOps<C>::is_zero(v)) scaled.emplace(w, std::move(v));
    }
    p.terms_ = std::move(scaled);
    return p;
  }

  // Conjugate-linear involution: reverses every word and conjugates every
  // coefficient, so (PQ)* == Q*P*.
  BasicPoly adjoint() const {
    BasicPoly out(n_);
    for (const auto& [w, c] : terms_) out.terms_.emplace(reversed(w), CoeffOps<C>::conj(c));
    return out;
  }

  int degree() const {
    if (terms_.empty()) return kDegreeOfZero;
    return word_degree(terms_.rbegin()->first);  // deg-lex: last key is longest
  }

  int degree_in(int i) const {
    if (i < 1 || i > n_) throw InvalidArgumentError("degree_in: generator index out of range");
    if (terms_.empty()) return kDegreeOfZero;
    int best = 0;
    for (const auto& [w, c] : terms_) best = std::max(best, count_letter(w, i));
    return best;
  }

  BasicPoly homogeneous_part(int m) const {
    if (m < 0) throw InvalidArgumentError("homogeneous_part: negative degree");
    BasicPoly out(n_);
    for (const auto& [w, c] : terms_)
      if (word_degree(w) == m) out.terms_.emplace(w, c);
    return out;
  }

  bool is_self_adjoint() const { return *this == adjoint(); }

  friend bool operator==(const BasicPoly& a, const BasicPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const BasicPoly& a, const BasicPoly& b) { return !(a == b); }

 private:
  void check_same_vars(const BasicPoly& o) const {
    if (n_ != o.n_)
      throw DimensionError("mixing polynomials over " + std::to_string(n_) + " and " +
                           std::to_string(o.n_) + " generators");
  }

  int n_;
  TermMap terms_;
};

using NcPoly = BasicPoly<Scalar>;   // exact complex-rational coefficients
using CPoly = BasicPoly<std::complex<double>>;  // float coefficients (degree-twist images)

// Majorant norm sum_w |c_w| R^deg(w), coefficients measured in float64.
// R must be positive.
template <class C>
double norm_R(const BasicPoly<C>& p, double R) {
  if (!(R > 0.0)) throw InvalidArgumentError("norm_R: radius must be positive");
  double acc = 0.0;
  for (const auto& [w, c] : p.terms()) acc += CoeffOps<C>::abs(c) * std::pow(R, word_degree(w));
  return acc;
}

CPoly to_cpoly(const NcPoly& p);
double max_coeff_abs(const CPoly& p);
double max_coeff_dist(const CPoly& a, const CPoly& b);  // sup-norm of a-b over coefficients

}  // namespace freereg
