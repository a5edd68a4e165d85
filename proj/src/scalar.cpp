#include "freereg/scalar.hpp"

#include <cmath>
#include <cstdlib>

#include "freereg/errors.hpp"

namespace freereg {

Scalar Scalar::ratio(long num, long den) {
  if (den == 0) throw InvalidArgumentError("rational with zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(std::move(q), mpq_class(0));
}

std::string Scalar::ratio_string(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class Scalar::parse_rational(const std::string& text) {
  if (text.empty()) throw InvalidArgumentError("empty rational literal");
  mpq_class q;
  if (q.set_str(text, 10) != 0)
    throw InvalidArgumentError("malformed rational literal '" + text + "'");
  if (sgn(mpq_class(q.get_den())) == 0)
    throw InvalidArgumentError("rational literal '" + text + "' has zero denominator");
  q.canonicalize();
  return q;
}

mpq_class rationalize(double x, double tol) {
  if (!std::isfinite(x)) throw NumericError("cannot rationalize a non-finite value");
  if (std::abs(x) <= tol) return mpq_class(0);

  // Continued-fraction convergents h_k/k_k of x; stop at the first one inside
  // the tolerance.  Denominators are capped so noise never gets laundered into
  // a huge exact fraction.
  const double kMaxDen = 1e15;
  double a = x;
  mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;  // h0/k0 is the current convergent
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(a);
    if (fl > 9.2e18 || fl < -9.2e18) break;
    mpz_class ai(static_cast<long>(fl));
    mpz_class h2 = ai * h0 + h1;
    mpz_class k2 = ai * k0 + k1;
    h1 = h0;
    k1 = k0;
    h0 = h2;
    k0 = k2;
    mpq_class approx(h0, k0);
    approx.canonicalize();
    if (std::abs(approx.get_d() - x) <= tol) return approx;
    if (k0.get_d() > kMaxDen) break;
    double frac = a - fl;
    if (frac < 1e-18) break;
    a = 1.0 / frac;
  }
  throw NumericError("no rational within tolerance of " + std::to_string(x));
}

}  // namespace freereg
