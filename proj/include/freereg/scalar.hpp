#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <utility>

namespace freereg {

/*
 * Exact complex-rational scalar.  Both parts are GMP rationals kept in
 * canonical form (reduced, positive denominator), so operator== is value
 * equality and coefficients survive arbitrarily long symbolic pipelines
 * without drift.
 */
class Scalar {
 public:
  Scalar() : re_(0), im_(0) {}
  Scalar(long value) : re_(value), im_(0) {}  // NOLINT: implicit by design (2 * P)
  Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  explicit Scalar(mpq_class re) : Scalar(std::move(re), mpq_class(0)) {}

  static Scalar ratio(long num, long den);
  static Scalar imaginary_unit() { return Scalar(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  double abs() const { return std::abs(to_complex()); }

  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator-(const Scalar& a) { return Scalar(-a.re_, -a.im_); }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // "p/q" with an explicit denominator even when it is 1; round-trips through
  // parse_rational exactly.
  std::string re_string() const { return ratio_string(re_); }
  std::string im_string() const { return ratio_string(im_); }

  // Accepts "p/q" or bare "p"; canonicalizes.  Throws InvalidArgumentError on
  // malformed text or a zero denominator.
  static mpq_class parse_rational(const std::string& text);

 private:
  static std::string ratio_string(const mpq_class& q);

  mpq_class re_, im_;
};

// Nearest-rational reconstruction of a double by continued fractions.  Used to
// pull exact coefficients back out of root-of-unity interpolation; throws
// NumericError when no small rational sits within tol.
mpq_class rationalize(double x, double tol = 1e-9);

}  // namespace freereg
