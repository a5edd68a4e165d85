#pragma once

#include <gmpxx.h>

#include "freereg/poly.hpp"
#include "freereg/rmt.hpp"

namespace freereg {

/*
 * Matrix-level test of the derivation identity behind the difference
 * quotients.  With D_i the evaluated difference quotient tensors and # the
 * two-sided insertion action, the operator
 *
 *   T = sum_i (u (x) v) # ( D_i # (Y_i (x) 1 - 1 (x) Y_i) )
 *       - (u (x) v) # ( P(Y) (x) 1 - 1 (x) P(Y) )
 *
 * vanishes identically on N x N matrices.  residual() applies the defect to
 * the full matrix-unit basis and accumulates Hilbert-Schmidt mass, so exact
 * cancellation is visible structurally rather than through one lucky vector.
 */
struct BimoduleResidual {
  double absolute = 0.0;  // HS norm of the defect as an operator
  double scale = 0.0;     // HS norm of the bracket part alone, for reference
  double relative() const { return absolute / (scale > 1.0 ? scale : 1.0); }
};

BimoduleResidual bimodule_commutator_residual(const NcPoly& p, const MatrixTuple& t,
                                              const CMatrix& u, const CMatrix& v);

// Exact-arithmetic variant: returns the exact squared HS norm of the defect
// operator.  Zero means the identity holds on the nose.
mpq_class bimodule_defect_norm_sq(const NcPoly& p, const QMatrixTuple& t, const QMatrix& u,
                                  const QMatrix& v);

}  // namespace freereg
