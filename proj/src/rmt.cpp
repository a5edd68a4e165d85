#include "freereg/rmt.hpp"

#include <cmath>

#include "freereg/errors.hpp"

namespace freereg {

CMatrix sample_gue(int N, RngStream& rng) {
  if (N < 1) throw InvalidArgumentError("sample_gue: dimension must be positive");
  CMatrix m(N);
  double diag_sd = 1.0 / std::sqrt(static_cast<double>(N));
  double off_sd = 1.0 / std::sqrt(2.0 * N);
  for (int i = 0; i < N; ++i) m.at(i, i) = {diag_sd * rng.next_gaussian(), 0.0};
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      double re = off_sd * rng.next_gaussian();
      double im = off_sd * rng.next_gaussian();
      m.at(i, j) = {re, im};
      m.at(j, i) = {re, -im};
    }
  return m;
}

MatrixTuple sample_gue_tuple(int n, int N, RngStream& rng) {
  if (n < 1) throw InvalidArgumentError("sample_gue_tuple: need at least one matrix");
  MatrixTuple t;
  t.y.reserve(n);
  for (int k = 0; k < n; ++k) t.y.push_back(sample_gue(N, rng));
  return t;
}

CMatrix bernoulli_diagonal(int N) {
  if (N < 1) throw InvalidArgumentError("bernoulli_diagonal: dimension must be positive");
  CMatrix m(N);
  int plus = (N + 1) / 2;
  for (int i = 0; i < N; ++i) m.at(i, i) = {i < plus ? 1.0 : -1.0, 0.0};
  return m;
}

namespace {

// Uniform rational in [-3, 3] with denominator 1..3.
Scalar small_rational(RngStream& rng) {
  long num = static_cast<long>(rng.next_u64() % 7) - 3;
  long den = static_cast<long>(rng.next_u64() % 3) + 1;
  return Scalar::ratio(num, den);
}

}  // namespace

QMatrix random_rational_symmetric(int N, RngStream& rng) {
  QMatrix m(N);
  for (int i = 0; i < N; ++i) {
    m.at(i, i) = small_rational(rng);
    for (int j = i + 1; j < N; ++j) {
      Scalar v = small_rational(rng);
      m.at(i, j) = v;
      m.at(j, i) = v;
    }
  }
  return m;
}

QMatrix random_rational_matrix(int N, RngStream& rng) {
  QMatrix m(N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) m.at(i, j) = small_rational(rng);
  return m;
}

QMatrixTuple random_rational_tuple(int n, int N, RngStream& rng) {
  QMatrixTuple t;
  t.y.reserve(n);
  for (int k = 0; k < n; ++k) t.y.push_back(random_rational_symmetric(N, rng));
  return t;
}

namespace {

template <class Tuple, class Mat>
Mat eval_word_impl(const Word& w, const Tuple& t) {
  int N = t.dim();
  if (N == 0) throw InvalidArgumentError("eval_word: empty matrix tuple");
  Mat acc = Mat::identity(N);
  for (int letter : w) {
    if (letter < 1 || letter > t.count())
      throw DimensionError("eval_word: word uses generator " + std::to_string(letter) +
                           " but tuple has " + std::to_string(t.count()) + " matrices");
    acc = mul(acc, t.y[letter - 1]);
  }
  return acc;
}

}  // namespace

CMatrix eval_word(const Word& w, const MatrixTuple& t) {
  return eval_word_impl<MatrixTuple, CMatrix>(w, t);
}

QMatrix eval_word(const Word& w, const QMatrixTuple& t) {
  return eval_word_impl<QMatrixTuple, QMatrix>(w, t);
}

CMatrix eval_poly(const NcPoly& p, const MatrixTuple& t) {
  if (p.var_count() > t.count())
    throw DimensionError("eval_poly: polynomial uses more generators than tuple provides");
  int N = t.dim();
  if (N == 0) throw InvalidArgumentError("eval_poly: empty matrix tuple");
  CMatrix acc(N);
  for (const auto& [w, c] : p.terms()) {
    CMatrix term = eval_word(w, t);
    std::complex<double> coeff = c.to_complex();
    auto* dst = acc.data().data();
    const auto* src = term.data().data();
    for (std::size_t k = 0; k < acc.data().size(); ++k) dst[k] += coeff * src[k];
  }
  if (p.is_self_adjoint()) {
    // Hermitian inputs plus a self-adjoint polynomial promise a Hermitian
    // value; anything beyond round-off means the inputs broke the promise.
    double tol = 1e-10 * std::max(1.0, max_abs_entry(acc));
    if (hermiticity_error(acc) > tol)
      throw NumericError("eval_poly: result of a self-adjoint polynomial is not Hermitian");
    hermitize(acc);
  }
  return acc;
}

QMatrix eval_poly(const NcPoly& p, const QMatrixTuple& t) {
  if (p.var_count() > t.count())
    throw DimensionError("eval_poly: polynomial uses more generators than tuple provides");
  int N = t.dim();
  if (N == 0) throw InvalidArgumentError("eval_poly: empty matrix tuple");
  QMatrix acc(N);
  for (const auto& [w, c] : p.terms()) {
    QMatrix term = eval_word(w, t);
    auto* dst = acc.data().data();
    const auto* src = term.data().data();
    for (std::size_t k = 0; k < acc.data().size(); ++k) dst[k] += c * src[k];
  }
  return acc;
}

}  // namespace freereg
