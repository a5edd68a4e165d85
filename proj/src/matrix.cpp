#include "freereg/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "freereg/parallel.hpp"

namespace freereg {

namespace {

/*
 * Complex product on split real/imaginary planes.  Four-row blocks walk the
 * common dimension broadcasting a-entries while streaming b rows, which keeps
 * the inner loop a pair of fused multiply-add sweeps the compiler vectorizes
 * well; complex<double> arithmetic in the inner loop would defeat that.
 */
void gemm_planar(int n, const double* ar, const double* ai, const double* br, const double* bi,
                 double* cr, double* ci) {
  constexpr int kRows = 4;
  std::size_t blocks = (static_cast<std::size_t>(n) + kRows - 1) / kRows;
  parallel_for(blocks, [&](std::size_t blk_lo, std::size_t blk_hi) {
    for (std::size_t blk = blk_lo; blk < blk_hi; ++blk) {
      int i0 = static_cast<int>(blk) * kRows;
      int rows = std::min(kRows, n - i0);
      for (int k = 0; k < n; ++k) {
        const double* brow_r = br + static_cast<std::size_t>(k) * n;
        const double* brow_i = bi + static_cast<std::size_t>(k) * n;
        for (int r = 0; r < rows; ++r) {
          std::size_t row = static_cast<std::size_t>(i0 + r) * n;
          double xr = ar[row + k];
          double xi = ai[row + k];
          if (xr == 0.0 && xi == 0.0) continue;
          double* crow_r = cr + row;
          double* crow_i = ci + row;
          for (int j = 0; j < n; ++j) {
            crow_r[j] += xr * brow_r[j] - xi * brow_i[j];
            crow_i[j] += xr * brow_i[j] + xi * brow_r[j];
          }
        }
      }
    }
  });
}

void split_planes(const CMatrix& m, std::vector<double>& re, std::vector<double>& im) {
  std::size_t total = m.data().size();
  re.resize(total);
  im.resize(total);
  const auto* src = m.data().data();
  for (std::size_t k = 0; k < total; ++k) {
    re[k] = src[k].real();
    im[k] = src[k].imag();
  }
}

}  // namespace

CMatrix mul(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("mul: matrix dimensions differ");
  int n = a.dim();
  std::vector<double> ar, ai, br, bi;
  split_planes(a, ar, ai);
  split_planes(b, br, bi);
  std::vector<double> cr(ar.size(), 0.0), ci(ar.size(), 0.0);
  gemm_planar(n, ar.data(), ai.data(), br.data(), bi.data(), cr.data(), ci.data());
  CMatrix c(n);
  auto* dst = c.data().data();
  for (std::size_t k = 0; k < cr.size(); ++k) dst[k] = {cr[k], ci[k]};
  return c;
}

QMatrix mul(const QMatrix& a, const QMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("mul: matrix dimensions differ");
  int n = a.dim();
  QMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Scalar& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        const Scalar& bkj = b.at(k, j);
        if (!bkj.is_zero()) c.at(i, j) += aik * bkj;
      }
    }
  return c;
}

CMatrix adjoint_of(const CMatrix& a) {
  int n = a.dim();
  CMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = std::conj(a.at(j, i));
  return out;
}

QMatrix adjoint_of(const QMatrix& a) {
  int n = a.dim();
  QMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = a.at(j, i).conj();
  return out;
}

std::complex<double> trace_of(const CMatrix& a) {
  std::complex<double> t = 0.0;
  for (int i = 0; i < a.dim(); ++i) t += a.at(i, i);
  return t;
}

Scalar trace_of(const QMatrix& a) {
  Scalar t;
  for (int i = 0; i < a.dim(); ++i) t += a.at(i, i);
  return t;
}

std::complex<double> trace_of_product(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("trace_of_product: matrix dimensions differ");
  int n = a.dim();
  std::complex<double> t = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t += a.at(i, j) * b.at(j, i);
  return t;
}

double frobenius_norm(const CMatrix& a) {
  double acc = 0.0;
  for (const auto& v : a.data()) acc += std::norm(v);
  return std::sqrt(acc);
}

mpq_class frobenius_norm_sq(const QMatrix& a) {
  mpq_class acc = 0;
  for (const auto& v : a.data()) acc += v.re() * v.re() + v.im() * v.im();
  return acc;
}

double max_abs_entry(const CMatrix& a) {
  double best = 0.0;
  for (const auto& v : a.data()) best = std::max(best, std::abs(v));
  return best;
}

double hermiticity_error(const CMatrix& a) {
  int n = a.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      worst = std::max(worst, std::abs(a.at(i, j) - std::conj(a.at(j, i))));
  return worst;
}

void hermitize(CMatrix& a) {
  int n = a.dim();
  for (int i = 0; i < n; ++i) {
    a.at(i, i) = {a.at(i, i).real(), 0.0};
    for (int j = i + 1; j < n; ++j) {
      std::complex<double> m = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
      a.at(i, j) = m;
      a.at(j, i) = std::conj(m);
    }
  }
}

}  // namespace freereg
