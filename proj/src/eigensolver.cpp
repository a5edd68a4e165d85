#include "freereg/eigensolver.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <vector>

#include "freereg/errors.hpp"
#include "freereg/parallel.hpp"

namespace freereg {

namespace {

/*
 * Stage one: reduce the Hermitian matrix to real symmetric tridiagonal form
 * by Householder reflections, working on split real/imaginary planes and
 * touching only the lower triangle.
 *
 * Column k below the diagonal is annihilated by the elementary reflector
 * H = I - tau v v* chosen so that H* x = beta e_1 with beta real:
 *     beta = -sign(Re alpha) * sqrt(|alpha|^2 + |tail|^2),
 *     tau  = (beta - alpha) / beta,   v = (1, tail / (alpha - beta)).
 * The similarity update of the trailing block A <- H A H* reduces to the
 * classical Hermitian rank-two form  A -= v w* + w v*  with
 *     p = tau A v,   w = p - (tau/2) (p* v) v.
 * Each step makes one subdiagonal entry real and zeros the column below it,
 * so afterwards the diagonal d and subdiagonal e are real.
 */
void tridiagonalize(int n, std::vector<double>& are, std::vector<double>& aim,
                    std::vector<double>& d, std::vector<double>& e) {
  d.assign(n, 0.0);
  e.assign(n > 1 ? n - 1 : 0, 0.0);
  std::vector<double> vr(n), vi(n), pr(n), pi(n);

  auto idx = [n](int i, int j) { return static_cast<std::size_t>(i) * n + j; };

  for (int k = 0; k + 1 < n; ++k) {
    int lo = k + 1;
    double ar = are[idx(lo, k)];
    double ai = aim[idx(lo, k)];
    double tail2 = 0.0;
    for (int i = lo + 1; i < n; ++i) {
      tail2 += are[idx(i, k)] * are[idx(i, k)] + aim[idx(i, k)] * aim[idx(i, k)];
    }
    double total2 = ar * ar + ai * ai + tail2;
    if (total2 == 0.0) {
      e[k] = 0.0;
      continue;
    }
    if (tail2 == 0.0 && ai == 0.0) {
      e[k] = ar;  // column already in tridiagonal shape
      continue;
    }

    double beta = -std::copysign(std::sqrt(total2), ar);
    double taur = (beta - ar) / beta;
    double taui = -ai / beta;
    // v = x / (alpha - beta), with v[lo] fixed at 1
    double dr = ar - beta, di = ai;
    double den = dr * dr + di * di;
    double sr = dr / den, si = -di / den;
    vr[lo] = 1.0;
    vi[lo] = 0.0;
    for (int i = lo + 1; i < n; ++i) {
      double xr = are[idx(i, k)], xi = aim[idx(i, k)];
      vr[i] = xr * sr - xi * si;
      vi[i] = xr * si + xi * sr;
    }
    e[k] = beta;

    // p = tau * A2 * v: fused Hermitian matvec over the stored lower triangle,
    // each row contributing to its own slot and mirroring into earlier ones.
    for (int i = lo; i < n; ++i) {
      pr[i] = 0.0;
      pi[i] = 0.0;
    }
    for (int i = lo; i < n; ++i) {
      const double* rowr = &are[idx(i, 0)];
      const double* rowi = &aim[idx(i, 0)];
      double qr = rowr[i] * vr[i];  // diagonal is real by construction
      double qi = rowr[i] * vi[i];
      double xr = vr[i], xi = vi[i];
      for (int j = lo; j < i; ++j) {
        double mr = rowr[j], mi = rowi[j];
        qr += mr * vr[j] - mi * vi[j];
        qi += mr * vi[j] + mi * vr[j];
        pr[j] += mr * xr + mi * xi;
        pi[j] += mr * xi - mi * xr;
      }
      pr[i] += qr;
      pi[i] += qi;
    }
    for (int i = lo; i < n; ++i) {
      double qr = pr[i], qi = pi[i];
      pr[i] = taur * qr - taui * qi;
      pi[i] = taur * qi + taui * qr;
    }

    // w = p - (tau/2) (p* v) v, stored back into p
    double dotr = 0.0, doti = 0.0;
    for (int i = lo; i < n; ++i) {
      dotr += pr[i] * vr[i] + pi[i] * vi[i];
      doti += pr[i] * vi[i] - pi[i] * vr[i];
    }
    double azr = -0.5 * (taur * dotr - taui * doti);
    double azi = -0.5 * (taur * doti + taui * dotr);
    for (int i = lo; i < n; ++i) {
      pr[i] += azr * vr[i] - azi * vi[i];
      pi[i] += azr * vi[i] + azi * vr[i];
    }

    // A2 -= v w* + w v*, lower triangle; rows are independent.
    parallel_for(static_cast<std::size_t>(n - lo), [&](std::size_t r0, std::size_t r1) {
      for (std::size_t r = r0; r < r1; ++r) {
        int i = lo + static_cast<int>(r);
        double vir = vr[i], vii = vi[i];
        double wir = pr[i], wii = pi[i];
        double* rowr = &are[idx(i, 0)];
        double* rowi = &aim[idx(i, 0)];
        for (int j = lo; j <= i; ++j) {
          double t1r = vir * pr[j] + vii * pi[j];
          double t1i = vii * pr[j] - vir * pi[j];
          double t2r = wir * vr[j] + wii * vi[j];
          double t2i = wii * vr[j] - wir * vi[j];
          rowr[j] -= t1r + t2r;
          rowi[j] -= t1i + t2i;
        }
      }
    });
  }

  for (int i = 0; i < n; ++i) d[i] = are[idx(i, i)];
}

}  // namespace

/*
 * Stage two: implicit-shift QL on a real symmetric tridiagonal matrix,
 * eigenvalues only.  The classical sweep: locate a split point, compute the
 * Wilkinson-style shift from the leading 2x2, then chase the bulge with
 * plane rotations.  Each eigenvalue is allowed 60 sweeps.
 */
std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e) {
  int n = static_cast<int>(d.size());
  if (n == 0) return {};
  if (e.size() + 1 != d.size())
    throw InvalidArgumentError("tridiagonal_eigenvalues: need n-1 subdiagonal entries");
  e.push_back(0.0);  // scratch slot used by the bulge chase

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= DBL_EPSILON * dd) break;
      }
      if (m != l) {
        if (iter++ == 60)
          throw ConvergenceError("tridiagonal eigensolver: eigenvalue " + std::to_string(l) +
                                 " did not settle in 60 sweeps");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> eigenvalues(const CMatrix& a, double hermitian_tol) {
  int n = a.dim();
  double err = hermiticity_error(a);
  if (err > hermitian_tol)
    throw NumericError("eigenvalues: matrix is not Hermitian (defect " + std::to_string(err) +
                       ")");
  if (n == 1) return {a.at(0, 0).real()};

  // Split the exactly symmetrized lower triangle into planes.
  std::vector<double> are(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> aim(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    are[static_cast<std::size_t>(i) * n + i] = a.at(i, i).real();
    for (int j = 0; j < i; ++j) {
      std::complex<double> v = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
      are[static_cast<std::size_t>(i) * n + j] = v.real();
      aim[static_cast<std::size_t>(i) * n + j] = v.imag();
    }
  }
  std::vector<double> d, e;
  tridiagonalize(n, are, aim, d, e);
  return tridiagonal_eigenvalues(std::move(d), std::move(e));
}

}  // namespace freereg
