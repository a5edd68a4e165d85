#pragma once

#include <gmpxx.h>

#include <complex>
#include <vector>

#include "freereg/errors.hpp"
#include "freereg/scalar.hpp"

namespace freereg {

/*
 * Dense square matrix, row-major.  Two coefficient types are instantiated:
 * complex<double> for the sampling pipeline and exact Scalar for small
 * rational-arithmetic identity checks.
 */
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() : n_(0) {}
  explicit DenseMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {
    if (n < 1) throw InvalidArgumentError("matrix dimension must be positive");
  }

  static DenseMatrix identity(int n) {
    DenseMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = T(1);
    return m;
  }

  int dim() const { return n_; }

  T& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const T& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  std::vector<T>& data() { return a_; }
  const std::vector<T>& data() const { return a_; }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    check_dim(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& o) {
    check_dim(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  DenseMatrix& operator*=(const T& s) {
    for (auto& v : a_) v *= s;
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }

 private:
  void check_dim(const DenseMatrix& o) const {
    if (n_ != o.n_) throw DimensionError("matrix dimensions differ");
  }

  int n_;
  std::vector<T> a_;
};

using CMatrix = DenseMatrix<std::complex<double>>;
using QMatrix = DenseMatrix<Scalar>;

// Products.  The complex version runs a cache-blocked split re/im kernel;
// the rational version is the plain cubic loop (meant for tiny matrices).
CMatrix mul(const CMatrix& a, const CMatrix& b);
QMatrix mul(const QMatrix& a, const QMatrix& b);

CMatrix adjoint_of(const CMatrix& a);
QMatrix adjoint_of(const QMatrix& a);

std::complex<double> trace_of(const CMatrix& a);
Scalar trace_of(const QMatrix& a);

// tr(a b) in O(n^2) without forming the product.
std::complex<double> trace_of_product(const CMatrix& a, const CMatrix& b);

double frobenius_norm(const CMatrix& a);
mpq_class frobenius_norm_sq(const QMatrix& a);  // exact |a|_F^2
double max_abs_entry(const CMatrix& a);

// Largest entrywise |a - a^*|; 0 for an exactly Hermitian matrix.
double hermiticity_error(const CMatrix& a);

// Replace a by (a + a^*)/2.
void hermitize(CMatrix& a);

}  // namespace freereg
