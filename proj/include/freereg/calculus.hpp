#pragma once

#include "freereg/poly.hpp"
#include "freereg/tensor.hpp"

namespace freereg {

class TraceFunctional;

/*
 * Free difference quotient d_j: the derivation with d_j(x_i) = delta_ij 1(x)1.
 * On a monomial l_1...l_k it produces
 *     sum over positions p with l_p = j of  (l_1..l_{p-1}) (x) (l_{p+1}..l_k).
 */
TensorPoly diff(const NcPoly& p, int j);

// Insertion action (u (x) v) # q = u q v, extended bilinearly.
NcPoly sharp(const TensorPoly& t, const NcPoly& q);

// Composition of one-sided multipliers: (u (x) v) # (a (x) b) = ua (x) bv,
// i.e. exactly the tensor whose insertion action is x |-> u(a x b)v.
TensorPoly sharp(const TensorPoly& t, const TensorPoly& s);

// Leg swap (a (x) b) -> (b (x) a).
TensorPoly flip(const TensorPoly& t);

// Number operator: scales each monomial by its total degree.  Equals
// sum_j diff(p, j) # x_j, which the tests pin down.
NcPoly number_op(const NcPoly& p);

// Partial number operator: scales each monomial by its x_i-degree.
NcPoly number_op_i(const NcPoly& p, int i);

// Degree twist: multiplies each degree-d monomial by exp(2 pi i t d).
// A one-parameter group of *-homomorphisms (unitary on generators), hence the
// float-coefficient return type.
CPoly phi_t(const NcPoly& p, double t);
CPoly phi_t(const CPoly& p, double t);

// Homogeneous component of degree m, recovered by averaging the degree twist
// against a character over the (deg+1)-st roots of unity and rounding the
// coefficients back to exact rationals.  Must equal homogeneous_part(m).
NcPoly fourier_extract(const NcPoly& p, int m);

// sum_i diff(p,i) # (x_i (x) 1 - 1 (x) x_i)  -  (p (x) 1 - 1 (x) p).
// Identically zero: the difference quotients assemble the inner derivation.
TensorPoly hochschild_defect(const NcPoly& p);

// Contraction of the first leg by the trace: maps diff(p, j) term a (x) b to
// tau(a) b.  Strictly drops degree for p with any x_j dependence.
NcPoly delta_reduce(const NcPoly& p, int j, const TraceFunctional& tau);

}  // namespace freereg
