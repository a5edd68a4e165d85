#include "freereg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "freereg/errors.hpp"
#include "freereg/parallel.hpp"

namespace freereg {

Histogram histogram(const EmpiricalMeasure& m, int bins,
                    std::optional<std::pair<double, double>> range) {
  if (bins < 1) throw InvalidArgumentError("histogram: need at least one bin");
  double lo, hi;
  if (range) {
    lo = range->first;
    hi = range->second;
    if (!(lo < hi)) throw InvalidArgumentError("histogram: range must have lo < hi");
  } else {
    lo = m.min();
    hi = m.max();
    if (lo == hi) {  // degenerate support: give the single value breathing room
      lo -= 0.5;
      hi += 0.5;
    }
  }
  Histogram h;
  h.edges.resize(bins + 1);
  for (int b = 0; b <= bins; ++b)
    h.edges[b] = lo + (hi - lo) * static_cast<double>(b) / bins;
  h.edges.back() = hi;
  h.masses.assign(bins, 0.0);
  double w = m.weight_each();
  for (double v : m.points()) {
    if (v < lo || v > hi) continue;
    int b = static_cast<int>((v - lo) / (hi - lo) * bins);
    if (b >= bins) b = bins - 1;  // right edge belongs to the last bin
    h.masses[b] += w;
  }
  return h;
}

void write_histogram_csv(const Histogram& h, std::ostream& out) {
  out << "bin_left,bin_right,mass\n";
  char buf[96];
  for (std::size_t b = 0; b < h.masses.size(); ++b) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", h.edges[b], h.edges[b + 1],
                  h.masses[b]);
    out << buf;
  }
}

namespace {

double simpson_rule(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_recurse(const std::function<double(double)>& f, double a, double fa, double b,
                       double fb, double m, double fm, double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson_rule(a, fa, m, fm, flm);
  double right = simpson_rule(m, fm, b, fb, frm);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_recurse(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
  double whole = simpson_rule(a, fa, b, fb, fm);
  return sign * simpson_recurse(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

ReferenceCdf reference_semicircle(double variance) {
  if (!(variance > 0.0))
    throw InvalidArgumentError("reference_semicircle: variance must be positive");
  double s = std::sqrt(variance);
  ReferenceCdf ref;
  ref.name = "semicircle";
  ref.lo = -2.0 * s;
  ref.hi = 2.0 * s;
  ref.cdf = [s](double x) {
    double lo = -2.0 * s, hi = 2.0 * s;
    if (x <= lo) return 0.0;
    if (x >= hi) return 1.0;
    auto density = [s](double t) {
      return std::sqrt(std::max(0.0, 4.0 * s * s - t * t)) / (2.0 * std::numbers::pi * s * s);
    };
    return adaptive_simpson(density, lo, x, 1e-9);
  };
  return ref;
}

ReferenceCdf reference_free_poisson() {
  ReferenceCdf ref;
  ref.name = "free_poisson";
  ref.lo = 0.0;
  ref.hi = 4.0;
  // In the variable u = sqrt(x) the density becomes sqrt(4 - u^2)/pi on
  // [0, 2]: smooth, so the quadrature never meets the x^{-1/2} edge.
  ref.cdf = [](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 4.0) return 1.0;
    auto density_u = [](double u) { return std::sqrt(std::max(0.0, 4.0 - u * u)) / std::numbers::pi; };
    return adaptive_simpson(density_u, 0.0, std::sqrt(x), 1e-9);
  };
  return ref;
}

double ks_distance(const EmpiricalMeasure& m, const ReferenceCdf& ref) {
  const auto& pts = m.points();
  std::size_t count = pts.size();
  std::vector<double> gaps(count, 0.0);
  parallel_for(count, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      // Both distribution functions are compared from the same side of the
      // jump: the reference's left limit is taken one ulp below the point,
      // which is exact for step references (a measure against its own CDF
      // reads 0) and invisible for continuous ones.
      double x = pts[i];
      double f_right = ref.cdf(x);
      double f_left = ref.cdf(std::nextafter(x, -std::numeric_limits<double>::infinity()));
      auto run_lo = std::lower_bound(pts.begin(), pts.end(), x) - pts.begin();
      auto run_hi = std::upper_bound(pts.begin(), pts.end(), x) - pts.begin();
      double below = static_cast<double>(run_lo) / count;  // F_emp just left of the jump
      double above = static_cast<double>(run_hi) / count;  // and just right of it
      gaps[i] = std::max(std::abs(f_left - below), std::abs(f_right - above));
    }
  });
  double d = 0.0;
  for (double g : gaps) d = std::max(d, g);
  return d;
}

AtomReport max_window_mass(const EmpiricalMeasure& m, double eps, double threshold_scale,
                           double threshold_power) {
  if (!(eps > 0.0)) throw InvalidArgumentError("max_window_mass: eps must be positive");
  const auto& pts = m.points();
  AtomReport r;
  r.eps = eps;
  r.threshold = threshold_scale * std::pow(eps, threshold_power);
  std::size_t best_count = 0, best_start = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (j < i) j = i;
    while (j + 1 < pts.size() && pts[j + 1] <= pts[i] + eps) ++j;
    std::size_t covered = j - i + 1;
    if (covered > best_count) {
      best_count = covered;
      best_start = i;
    }
  }
  r.max_mass = static_cast<double>(best_count) * m.weight_each();
  r.window_lo = pts[best_start];
  r.window_hi = pts[best_start] + eps;
  r.flagged = r.max_mass > r.threshold;
  return r;
}

DecayReport decay_exponent(const EmpiricalMeasure& m, double t, const std::vector<double>& eps,
                           bool two_sided) {
  if (eps.empty()) throw InvalidArgumentError("decay_exponent: empty eps grid");
  DecayReport r;
  r.t = t;
  r.two_sided = two_sided;
  r.eps = eps;
  r.masses.reserve(eps.size());
  std::vector<std::pair<double, double>> fit_points;  // (log eps, log mass)
  for (double e : eps) {
    if (!(e > 0.0)) throw InvalidArgumentError("decay_exponent: eps values must be positive");
    double mass = two_sided ? m.mass_in(t - e, t + e) : m.mass_in(t, t + e);
    r.masses.push_back(mass);
    if (mass > 0.0) fit_points.emplace_back(std::log(e), std::log(mass));
  }
  r.points_used = static_cast<int>(fit_points.size());
  if (r.points_used < 2)
    throw SparseMassError(
        "decay_exponent: fewer than two windows hold sample mass near t = " + std::to_string(t) +
        "; raise N or trials, or widen the eps grid");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : fit_points) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double k = static_cast<double>(r.points_used);
  double denom = k * sxx - sx * sx;
  if (denom == 0.0)
    throw InvalidArgumentError("decay_exponent: eps grid must contain distinct usable values");
  r.alpha_hat = (k * sxy - sx * sy) / denom;
  double intercept = (sy - r.alpha_hat * sx) / k;
  double ss = 0.0;
  for (auto [x, y] : fit_points) {
    double resid = y - (intercept + r.alpha_hat * x);
    ss += resid * resid;
  }
  r.fit_residual = std::sqrt(ss / k);
  return r;
}

std::vector<double> geometric_grid(double start, double ratio, int count) {
  if (!(start > 0.0)) throw InvalidArgumentError("geometric_grid: start must be positive");
  if (!(ratio > 0.0 && ratio < 1.0))
    throw InvalidArgumentError("geometric_grid: ratio must lie in (0, 1)");
  if (count < 1) throw InvalidArgumentError("geometric_grid: count must be positive");
  std::vector<double> out;
  out.reserve(count);
  double v = start;
  for (int k = 0; k < count; ++k) {
    out.push_back(v);
    v *= ratio;
  }
  return out;
}

EntropyEstimate log_energy(const EmpiricalMeasure& m) {
  const auto& pts = m.points();
  std::size_t count = pts.size();
  if (count < 2) throw InvalidArgumentError("log_energy: need at least two points");
  EntropyEstimate e;
  e.constant = 0.75 + 0.5 * std::log(2.0 * std::numbers::pi);
  e.pair_count = count * (count - 1);

  bool duplicate = false;
  for (std::size_t i = 0; i + 1 < count; ++i)
    if (pts[i] == pts[i + 1]) {  // sorted, so equal pairs are adjacent
      duplicate = true;
      break;
    }
  if (duplicate) {
    e.log_energy = -std::numeric_limits<double>::infinity();
    e.chi = -std::numeric_limits<double>::infinity();
    e.atom_warning = true;
    return e;
  }

  std::vector<double> partial(count, 0.0);
  parallel_for(count, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      double xi = pts[i];
      double acc = 0.0;
      for (std::size_t j = i + 1; j < count; ++j) acc += std::log(pts[j] - xi);
      partial[i] = acc;
    }
  });
  double total = 0.0;
  for (double p : partial) total += p;  // index order: worker-count independent
  e.log_energy = 2.0 * total / static_cast<double>(e.pair_count);
  e.chi = e.log_energy + e.constant;
  return e;
}

nlohmann::json atom_report_json(const AtomReport& r, const EmpiricalMeasure& m) {
  return {{"measure", measure_meta_json(m)},
          {"eps", r.eps},
          {"max_mass", r.max_mass},
          {"window", {r.window_lo, r.window_hi}},
          {"threshold", r.threshold},
          {"flagged", r.flagged}};
}

nlohmann::json decay_report_json(const DecayReport& r, const EmpiricalMeasure& m) {
  return {{"measure", measure_meta_json(m)},
          {"t", r.t},
          {"two_sided", r.two_sided},
          {"eps", r.eps},
          {"masses", r.masses},
          {"alpha_hat", r.alpha_hat},
          {"fit_residual", r.fit_residual},
          {"points_used", r.points_used}};
}

nlohmann::json entropy_json(const EntropyEstimate& e, const EmpiricalMeasure& m) {
  nlohmann::json j{{"measure", measure_meta_json(m)},
                   {"constant", e.constant},
                   {"pair_count", e.pair_count},
                   {"atom_warning", e.atom_warning}};
  if (std::isfinite(e.log_energy)) {
    j["log_energy"] = e.log_energy;
    j["chi"] = e.chi;
  } else {
    j["log_energy"] = "-inf";
    j["chi"] = "-inf";
  }
  return j;
}

}  // namespace freereg
