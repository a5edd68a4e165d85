#include "freereg/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "freereg/eigensolver.hpp"
#include "freereg/errors.hpp"
#include "freereg/rmt.hpp"

namespace freereg {

EmpiricalMeasure::EmpiricalMeasure(std::vector<double> points, MeasureMeta meta)
    : points_(std::move(points)), meta_(std::move(meta)) {
  if (points_.empty()) throw InvalidArgumentError("empirical measure needs at least one point");
  for (double v : points_)
    if (!std::isfinite(v)) throw InvalidArgumentError("empirical measure holds a non-finite point");
  std::sort(points_.begin(), points_.end());
}

double EmpiricalMeasure::mass_in(double a, double b) const {
  if (a > b) return 0.0;
  auto lo = std::lower_bound(points_.begin(), points_.end(), a);
  auto hi = std::upper_bound(points_.begin(), points_.end(), b);
  return static_cast<double>(hi - lo) / static_cast<double>(points_.size());
}

double EmpiricalMeasure::cdf(double x) const {
  auto hi = std::upper_bound(points_.begin(), points_.end(), x);
  return static_cast<double>(hi - points_.begin()) / static_cast<double>(points_.size());
}

namespace {

void require_sampling_args(int N, int trials) {
  if (N < 1) throw InvalidArgumentError("matrix dimension must be positive");
  if (trials < 1) throw InvalidArgumentError("need at least one trial");
}

}  // namespace

EmpiricalMeasure sample_spectrum(const NcPoly& p, int N, int trials, std::uint64_t seed,
                                 std::string expr_display) {
  require_sampling_args(N, trials);
  if (!p.is_self_adjoint())
    throw InvalidArgumentError("sample_spectrum: polynomial must be self-adjoint");
  std::vector<double> points;
  points.reserve(static_cast<std::size_t>(N) * trials);
  for (int t = 0; t < trials; ++t) {
    RngStream rng = RngStream::substream(seed, static_cast<std::uint64_t>(t));
    MatrixTuple tuple = sample_gue_tuple(p.var_count(), N, rng);
    CMatrix value = eval_poly(p, tuple);
    std::vector<double> eig = eigenvalues(value);
    points.insert(points.end(), eig.begin(), eig.end());
  }
  MeasureMeta meta;
  meta.expr = std::move(expr_display);
  meta.n = p.var_count();
  meta.N = N;
  meta.trials = trials;
  meta.seed = seed;
  return EmpiricalMeasure(std::move(points), std::move(meta));
}

EmpiricalMeasure bernoulli_control(int N, int trials, std::uint64_t seed) {
  require_sampling_args(N, trials);
  CMatrix m = bernoulli_diagonal(N);
  std::vector<double> points;
  points.reserve(static_cast<std::size_t>(N) * trials);
  for (int t = 0; t < trials; ++t)
    for (int i = 0; i < N; ++i) points.push_back(m.at(i, i).real());
  MeasureMeta meta;
  meta.expr = "bernoulli";
  meta.n = 0;
  meta.N = N;
  meta.trials = trials;
  meta.seed = seed;
  return EmpiricalMeasure(std::move(points), std::move(meta));
}

std::vector<double> sampled_moments(const NcPoly& p, int k, int N, int trials,
                                    std::uint64_t seed) {
  require_sampling_args(N, trials);
  if (k < 0) throw InvalidArgumentError("sampled_moments: order must be nonnegative");
  if (!p.is_self_adjoint())
    throw InvalidArgumentError("sampled_moments: polynomial must be self-adjoint");
  std::vector<double> acc(k, 0.0);
  if (k == 0) return acc;
  int half = (k + 1) / 2;
  for (int t = 0; t < trials; ++t) {
    RngStream rng = RngStream::substream(seed, static_cast<std::uint64_t>(t));
    MatrixTuple tuple = sample_gue_tuple(p.var_count(), N, rng);
    CMatrix value = eval_poly(p, tuple);
    // Powers up to ceil(k/2); tr(A^j) = tr(A^a A^b) with a+b=j costs O(N^2).
    std::vector<CMatrix> powers;
    powers.reserve(half + 1);
    powers.push_back(CMatrix::identity(N));
    powers.push_back(value);
    for (int j = 2; j <= half; ++j) powers.push_back(mul(powers[j - 1], value));
    for (int j = 1; j <= k; ++j) {
      int a = std::min(j, half);
      int b = j - a;
      std::complex<double> tr = trace_of_product(powers[a], powers[b]);
      acc[j - 1] += tr.real() / N;
    }
  }
  for (double& v : acc) v /= trials;
  return acc;
}

void write_measure_csv(const EmpiricalMeasure& m, std::ostream& out) {
  out << "value,weight\n";
  char buf[64];
  double w = m.weight_each();
  for (double v : m.points()) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", v, w);
    out << buf;
  }
}

EmpiricalMeasure read_measure_csv(std::istream& in, MeasureMeta meta) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("value,weight", 0) != 0)
    throw InvalidArgumentError("measure CSV must start with a 'value,weight' header");
  std::vector<double> points;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    double v, w;
    char comma;
    if (!(row >> v >> comma >> w) || comma != ',')
      throw InvalidArgumentError("measure CSV: bad row at line " + std::to_string(lineno));
    points.push_back(v);
  }
  return EmpiricalMeasure(std::move(points), std::move(meta));
}

nlohmann::json measure_meta_json(const EmpiricalMeasure& m) {
  const MeasureMeta& meta = m.meta();
  return {{"expr", meta.expr}, {"n", meta.n},       {"N", meta.N},
          {"trials", meta.trials}, {"seed", meta.seed}, {"points", m.size()}};
}

}  // namespace freereg
