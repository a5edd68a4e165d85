#pragma once

#include <vector>

#include "freereg/matrix.hpp"
#include "freereg/poly.hpp"
#include "freereg/rng.hpp"

namespace freereg {

// A tuple (Y_1, ..., Y_n) of same-size matrices standing in for the
// generators; eval_poly substitutes them into a polynomial.
struct MatrixTuple {
  std::vector<CMatrix> y;
  int count() const { return static_cast<int>(y.size()); }
  int dim() const { return y.empty() ? 0 : y[0].dim(); }
};

struct QMatrixTuple {
  std::vector<QMatrix> y;
  int count() const { return static_cast<int>(y.size()); }
  int dim() const { return y.empty() ? 0 : y[0].dim(); }
};

/*
 * One N x N sample normalized so E tr_N(Y^2) = 1 and the bulk spectrum fills
 * [-2, 2]: diagonal entries real N(0, 1/N); off-diagonal entries complex with
 * independent real and imaginary parts N(0, 1/(2N)), mirrored conjugately.
 * Entry order is fixed (diagonal, then upper triangle row by row), so a given
 * stream always yields the same matrix.
 */
CMatrix sample_gue(int N, RngStream& rng);

MatrixTuple sample_gue_tuple(int n, int N, RngStream& rng);

// Symmetric +-1 diagonal: ceil(N/2) entries +1 and the rest -1.  Pure point
// spectrum; serves as the contrast case for the atom detectors.
CMatrix bernoulli_diagonal(int N);

// Small-denominator random rational symmetric matrix / tuple / square matrix,
// for exact-arithmetic identity checks.
QMatrix random_rational_symmetric(int N, RngStream& rng);
QMatrix random_rational_matrix(int N, RngStream& rng);
QMatrixTuple random_rational_tuple(int n, int N, RngStream& rng);

// Substitutes the tuple into p (empty word -> identity).  When p is
// self-adjoint the float result is checked to be Hermitian within round-off
// (throws NumericError otherwise) and then symmetrized exactly.
CMatrix eval_poly(const NcPoly& p, const MatrixTuple& t);
QMatrix eval_poly(const NcPoly& p, const QMatrixTuple& t);

// Product Y_{w_1} ... Y_{w_k} (identity for the empty word).
CMatrix eval_word(const Word& w, const MatrixTuple& t);
QMatrix eval_word(const Word& w, const QMatrixTuple& t);

}  // namespace freereg
