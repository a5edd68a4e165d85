#pragma once

#include <cstdint>
#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "freereg/poly.hpp"

namespace freereg {

// Provenance carried with every sampled spectrum so downstream reports can
// echo exactly what produced the numbers.
struct MeasureMeta {
  std::string expr;       // display form of the sampled polynomial
  int n = 0;              // generators
  int N = 0;              // matrix dimension
  int trials = 0;
  std::uint64_t seed = 0;
};

/*
 * Atomic empirical measure: equal mass 1/size at each stored point.  Points
 * are kept sorted ascending, which makes interval masses, window scans and
 * distribution-distance computations O(log size) or one linear pass.
 */
class EmpiricalMeasure {
 public:
  EmpiricalMeasure(std::vector<double> points, MeasureMeta meta);

  const std::vector<double>& points() const { return points_; }
  const MeasureMeta& meta() const { return meta_; }
  std::size_t size() const { return points_.size(); }
  double weight_each() const { return 1.0 / static_cast<double>(points_.size()); }

  double min() const { return points_.front(); }
  double max() const { return points_.back(); }

  // Mass of the closed interval [a, b].
  double mass_in(double a, double b) const;

  // Fraction of points <= x (right-continuous empirical distribution).
  double cdf(double x) const;

 private:
  std::vector<double> points_;
  MeasureMeta meta_;
};

/*
 * Pooled spectrum of p evaluated on independent matrix samples: trial t uses
 * the substream (seed, t), samples one matrix per generator, evaluates p and
 * collects all eigenvalues.  p must be self-adjoint.  Byte-identical output
 * for identical (p, N, trials, seed).
 */
EmpiricalMeasure sample_spectrum(const NcPoly& p, int N, int trials, std::uint64_t seed,
                                 std::string expr_display = {});

// Pure point contrast measure: spectrum of the +-1 diagonal, pooled over
// `trials` copies.  Mass 1/2 at -1 and +1 (up to the odd-N remainder).
EmpiricalMeasure bernoulli_control(int N, int trials, std::uint64_t seed);

/*
 * Sampled moment curve [avg tr_N(P^1), ..., avg tr_N(P^k)] over `trials`
 * independent tuples.  Uses the power family of the evaluated matrix and
 * O(N^2) pair traces, so no eigendecomposition is involved.
 */
std::vector<double> sampled_moments(const NcPoly& p, int k, int N, int trials,
                                    std::uint64_t seed);

// "value,weight" rows, one per point, in ascending order; 17 significant
// digits so the round trip is exact.
void write_measure_csv(const EmpiricalMeasure& m, std::ostream& out);
EmpiricalMeasure read_measure_csv(std::istream& in, MeasureMeta meta);

nlohmann::json measure_meta_json(const EmpiricalMeasure& m);

}  // namespace freereg
