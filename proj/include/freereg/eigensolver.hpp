#pragma once

#include <vector>

#include "freereg/matrix.hpp"

namespace freereg {

/*
 * Eigenvalues of a Hermitian matrix, ascending.  Two classical stages:
 * unitary reduction to a real symmetric tridiagonal form by Householder
 * reflections, then implicit-shift QL iteration on the tridiagonal.  Only
 * eigenvalues are accumulated (no vectors), which is all the spectral
 * statistics need.
 *
 * The input must be Hermitian within hermitian_tol entrywise (checked);
 * it is symmetrized exactly before reduction.  Throws ConvergenceError if
 * some eigenvalue fails to settle within 60 sweeps — unseen in practice.
 */
std::vector<double> eigenvalues(const CMatrix& a, double hermitian_tol = 1e-9);

// Stage two alone: eigenvalues of the real symmetric tridiagonal matrix with
// diagonal d and subdiagonal e (e.size() == d.size() - 1), ascending.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e);

}  // namespace freereg
