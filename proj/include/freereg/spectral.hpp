#pragma once

#include <functional>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "freereg/measure.hpp"

namespace freereg {

// Equal-width histogram; masses are fractions of the total measure (points
// falling outside an explicitly passed range are simply not counted).
struct Histogram {
  std::vector<double> edges;   // bins+1 ascending edges
  std::vector<double> masses;  // one per bin
};

Histogram histogram(const EmpiricalMeasure& m, int bins,
                    std::optional<std::pair<double, double>> range = std::nullopt);

// "bin_left,bin_right,mass" rows.
void write_histogram_csv(const Histogram& h, std::ostream& out);

/*
 * Absolutely continuous reference law given through its distribution
 * function.  The built-ins compute the CDF by adaptive quadrature of the
 * density (absolute tolerance 1e-9), with the hard-edge law integrated in a
 * square-root variable so the quadrature never sees the singularity.
 */
struct ReferenceCdf {
  std::string name;
  double lo = 0.0, hi = 0.0;  // support
  std::function<double(double)> cdf;
};

// Semicircle of the given variance: density sqrt(4 v - x^2) / (2 pi v) on
// [-2 sqrt(v), 2 sqrt(v)]; variance 1 is the standard law on [-2, 2].
ReferenceCdf reference_semicircle(double variance = 1.0);

// Unit-rate hard-edge law: density sqrt((4 - x)/x) / (2 pi) on (0, 4].
ReferenceCdf reference_free_poisson();

// Recursive Simpson quadrature with the classical 1/15 error estimate.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-9);

// sup_x |F_empirical(x) - F_reference(x)|, evaluated from both sides of every
// jump of the empirical CDF.
double ks_distance(const EmpiricalMeasure& m, const ReferenceCdf& ref);

/*
 * Largest mass carried by any width-eps window [x, x+eps] anchored at sample
 * points.  The flag compares against the default threshold 5 * eps^0.4 —
 * far more than any bounded density can put in a small window, but far less
 * than an atom keeps as eps -> 0.
 */
struct AtomReport {
  double eps = 0.0;
  double max_mass = 0.0;
  double window_lo = 0.0, window_hi = 0.0;
  double threshold = 0.0;
  bool flagged = false;
};

AtomReport max_window_mass(const EmpiricalMeasure& m, double eps, double threshold_scale = 5.0,
                           double threshold_power = 0.4);

/*
 * Least-squares slope of log mu(B_eps(t)) against log eps over a shrinking
 * window family: the local mass-decay exponent at t.  Windows with zero
 * sampled mass are dropped; fewer than two usable windows throws
 * SparseMassError (raise N or trials).
 */
struct DecayReport {
  double t = 0.0;
  bool two_sided = true;
  std::vector<double> eps;     // as given
  std::vector<double> masses;  // window masses, aligned with eps
  double alpha_hat = 0.0;      // fitted slope
  double fit_residual = 0.0;   // RMS residual of the fit in log-log space
  int points_used = 0;
};

DecayReport decay_exponent(const EmpiricalMeasure& m, double t, const std::vector<double>& eps,
                           bool two_sided = true);

// start * ratio^k for k = 0..count-1; requires start > 0 and 0 < ratio < 1.
std::vector<double> geometric_grid(double start, double ratio, int count);

/*
 * Pairwise logarithmic energy (1/(m(m-1))) sum_{i != j} log|x_i - x_j| plus
 * the universal additive constant 3/4 + log(2 pi)/2 gives the free entropy
 * estimate chi.  Exactly coincident points force -infinity; that is reported
 * through the sentinel and atom_warning rather than an exception, since for
 * sampled atomic measures it is the honest answer.
 */
struct EntropyEstimate {
  double log_energy = 0.0;
  double constant = 0.0;
  double chi = 0.0;
  std::size_t pair_count = 0;
  bool atom_warning = false;
};

EntropyEstimate log_energy(const EmpiricalMeasure& m);

nlohmann::json atom_report_json(const AtomReport& r, const EmpiricalMeasure& m);
nlohmann::json decay_report_json(const DecayReport& r, const EmpiricalMeasure& m);
nlohmann::json entropy_json(const EntropyEstimate& e, const EmpiricalMeasure& m);

}  // namespace freereg
