// Shared fixtures for the test binaries: random polynomial generators,
// closed-form reference laws, and small hand-rolled numeric oracles kept
// deliberately separate from the library implementations they judge.
#pragma once

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "freereg/poly.hpp"
#include "freereg/rng.hpp"

namespace testutil {

// ---- random exact polynomials ----------------------------------------------

inline freereg::Scalar random_coeff(freereg::RngStream& rng, bool complex_ok = true) {
  auto small = [&](long lo, long hi) {
    return lo + static_cast<long>(rng.next_u64() % static_cast<unsigned long>(hi - lo + 1));
  };
  mpq_class re(small(-4, 4), small(1, 3));
  re.canonicalize();
  mpq_class im(0);
  if (complex_ok && rng.next_u64() % 3 == 0) {
    im = mpq_class(small(-3, 3), small(1, 2));
    im.canonicalize();
  }
  return freereg::Scalar(re, im);
}

inline freereg::Word random_word(freereg::RngStream& rng, int n, int max_len) {
  int len = static_cast<int>(rng.next_u64() % static_cast<unsigned long>(max_len + 1));
  freereg::Word w(len);
  for (int& l : w) l = 1 + static_cast<int>(rng.next_u64() % static_cast<unsigned long>(n));
  return w;
}

inline freereg::NcPoly random_poly(freereg::RngStream& rng, int n, int max_deg, int max_terms,
                                   bool complex_ok = true) {
  freereg::NcPoly p(n);
  int terms = 1 + static_cast<int>(rng.next_u64() % static_cast<unsigned long>(max_terms));
  for (int t = 0; t < terms; ++t) p.add_term(random_word(rng, n, max_deg), random_coeff(rng, complex_ok));
  return p;
}

// Self-adjoint with a nonzero high-degree part: q + q* keeps word degrees.
inline freereg::NcPoly random_sa_poly(freereg::RngStream& rng, int n, int max_deg, int max_terms) {
  freereg::NcPoly q = random_poly(rng, n, max_deg, max_terms);
  return q + q.adjoint();
}

// ---- closed-form reference laws --------------------------------------------

// Standard semicircle on [-2,2]: density sqrt(4-x^2)/(2 pi).
inline double semicircle_cdf_closed(double x) {
  if (x <= -2) return 0.0;
  if (x >= 2) return 1.0;
  return 0.5 + (x * std::sqrt(4.0 - x * x) + 4.0 * std::asin(x / 2.0)) / (4.0 * M_PI);
}

inline double semicircle_density(double x) {
  double d = 4.0 - x * x;
  return d <= 0 ? 0.0 : std::sqrt(d) / (2.0 * M_PI);
}

// Square of a standard semicircular: density sqrt((4-x)/x)/(2 pi) on (0,4].
// Antiderivative via x = u^2: integral = (u sqrt(4-u^2)/2 + 2 asin(u/2))/pi.
inline double free_poisson_cdf_closed(double x) {
  if (x <= 0) return 0.0;
  if (x >= 4) return 1.0;
  double u = std::sqrt(x);
  return (u * std::sqrt(4.0 - x) / 2.0 + 2.0 * std::asin(u / 2.0)) / M_PI;
}

// Inverts a monotone CDF by bisection on [lo, hi].
template <class F>
double cdf_quantile(F&& cdf, double q, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    double mid = 0.5 * (lo + hi);
    (cdf(mid) < q ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Deterministic m-point discretization of a law: points at the midpoints-of-
// mass quantiles, the standard fixture for KS and decay oracles.
template <class F>
std::vector<double> quantile_fixture(F&& cdf, int m, double lo, double hi) {
  std::vector<double> pts(m);
  for (int i = 0; i < m; ++i) pts[i] = cdf_quantile(cdf, (i + 0.5) / m, lo, hi);
  return pts;
}

// ---- independent quadrature -------------------------------------------------

// Plain recursive Simpson, written apart from the library's integrator so the
// two can vouch for each other.
template <class F>
double simpson_oracle_rec(F&& f, double a, double fa, double b, double fb, double m, double fm,
                          double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_oracle_rec(f, a, fa, m, fm, lm, flm, left, tol / 2, depth - 1) +
         simpson_oracle_rec(f, m, fm, b, fb, rm, frm, right, tol / 2, depth - 1);
}

template <class F>
double simpson_oracle(F&& f, double a, double b, double tol) {
  if (a >= b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fb = f(b), fm = f(m);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_oracle_rec(f, a, fa, b, fb, m, fm, whole, tol, 40);
}

// Double integral of log|s-t| against the semicircle density, the quadrature
// oracle for the entropy checks.  The inner integral splits at the log
// singularity; the skipped 2*delta sliver contributes O(delta log delta).
inline double semicircle_log_energy_oracle() {
  const double delta = 1e-9;
  auto inner = [&](double s) {
    auto g = [&](double t) { return std::log(std::abs(s - t)) * semicircle_density(t); };
    double v = 0.0;
    if (s - delta > -2.0) v += simpson_oracle(g, -2.0, s - delta, 1e-8);
    if (s + delta < 2.0) v += simpson_oracle(g, s + delta, 2.0, 1e-8);
    return v;
  };
  // Outer integral on a fixed Simpson grid; the integrand is smooth.
  const int grid = 400;  // intervals, even
  double h = 4.0 / grid, acc = 0.0;
  for (int k = 0; k <= grid; ++k) {
    double s = -2.0 + k * h;
    double w = (k == 0 || k == grid) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    acc += w * inner(s) * semicircle_density(s);
  }
  return acc * h / 3.0;
}

// Least-squares slope of y against x, kept separate from the library fit.
inline double ls_slope_oracle(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double m = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

// ---- subprocess driver -------------------------------------------------------

struct CmdResult {
  int exit_code = -1;
  std::string output;  // stdout+stderr interleaved
};

inline std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  out += "'";
  return out;
}

inline std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs a shell command, capturing interleaved output and the exit code.
inline CmdResult run_cmd(const std::string& cmd) {
  static int counter = 0;
  std::string capture = "/tmp/freereg_test_out_" + std::to_string(getpid()) + "_" +
                        std::to_string(counter++) + ".txt";
  int rc = std::system((cmd + " > " + capture + " 2>&1").c_str());
  CmdResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.output = slurp_file(capture);
  std::remove(capture.c_str());
  return r;
}

}  // namespace testutil
