// Empirical spectral measures: pooling, determinism, interval masses, CSV
// round trips, and the eigensolver-free sampled moment curve.  The moment
// curve is cross-validated against eigenvalue power sums of the same seeds —
// two independent reductions of the same matrices must agree to round-off.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "freereg/eigensolver.hpp"
#include "freereg/errors.hpp"
#include "freereg/matrix.hpp"
#include "freereg/measure.hpp"
#include "freereg/rmt.hpp"
#include "freereg/rng.hpp"
#include "helpers.hpp"

using freereg::EmpiricalMeasure;
using freereg::MeasureMeta;
using freereg::NcPoly;

namespace {

NcPoly anticommutator() {
  NcPoly x1 = NcPoly::generator(2, 1), x2 = NcPoly::generator(2, 2);
  return x1 * x2 + x2 * x1;
}

}  // namespace

TEST_CASE("measure construction and interval masses") {
  EmpiricalMeasure m({3.0, 1.0, 2.0, 2.0}, {});
  CHECK(m.points() == std::vector<double>{1.0, 2.0, 2.0, 3.0});  // sorted on entry
  CHECK(m.weight_each() == doctest::Approx(0.25));
  CHECK(m.mass_in(2.0, 2.0) == doctest::Approx(0.5));   // closed interval
  CHECK(m.mass_in(1.0, 3.0) == doctest::Approx(1.0));
  CHECK(m.mass_in(3.5, 9.0) == 0.0);
  CHECK(m.cdf(0.5) == 0.0);
  CHECK(m.cdf(2.0) == doctest::Approx(0.75));
  CHECK(m.cdf(99.0) == 1.0);
  CHECK(m.min() == 1.0);
  CHECK(m.max() == 3.0);

  CHECK_THROWS_AS(EmpiricalMeasure({}, {}), freereg::InvalidArgumentError);
  CHECK_THROWS_AS(EmpiricalMeasure({1.0, std::nan("")}, {}), freereg::InvalidArgumentError);
}

TEST_CASE("sampled spectra: size, determinism, self-adjointness guard") {
  NcPoly p = anticommutator();
  EmpiricalMeasure a = freereg::sample_spectrum(p, 40, 3, 99);
  EmpiricalMeasure b = freereg::sample_spectrum(p, 40, 3, 99);
  EmpiricalMeasure c = freereg::sample_spectrum(p, 40, 3, 100);

  CHECK(a.size() == 120);
  CHECK(a.points() == b.points());  // exact replay
  CHECK(a.points() != c.points());
  CHECK(a.meta().N == 40);
  CHECK(a.meta().trials == 3);
  CHECK(a.meta().seed == 99);

  NcPoly x1x2 = NcPoly::generator(2, 1) * NcPoly::generator(2, 2);
  CHECK_THROWS_AS(freereg::sample_spectrum(x1x2, 10, 1, 1), freereg::InvalidArgumentError);
  CHECK_THROWS_AS(freereg::sample_spectrum(p, 10, 0, 1), freereg::InvalidArgumentError);
}

TEST_CASE("generator spectrum obeys the semicircle law") {
  EmpiricalMeasure m = freereg::sample_spectrum(NcPoly::generator(1, 1), 1000, 5, 4);
  double worst = 0.0;
  const auto& pts = m.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double f = testutil::semicircle_cdf_closed(pts[i]);
    worst = std::max(worst, std::abs((i + 1.0) / pts.size() - f));
    worst = std::max(worst, std::abs(i / static_cast<double>(pts.size()) - f));
  }
  CHECK(worst <= 0.03);  // pooled N=1000 x 5 empirical law
}

TEST_CASE("pure point control") {
  EmpiricalMeasure m = freereg::bernoulli_control(100, 2, 1);
  CHECK(m.size() == 200);
  CHECK(m.mass_in(-1.0, -1.0) == doctest::Approx(0.5));
  CHECK(m.mass_in(1.0, 1.0) == doctest::Approx(0.5));
  CHECK(m.mass_in(-0.5, 0.5) == 0.0);
}

TEST_CASE("sampled moments match eigenvalue power sums of the same matrices") {
  NcPoly p = anticommutator();
  const int N = 24, trials = 3, k = 5;
  const std::uint64_t seed = 31;
  std::vector<double> curve = freereg::sampled_moments(p, k, N, trials, seed);

  // Oracle: same substreams, same evaluation, but reduced through the
  // eigensolver instead of trace powers.
  std::vector<double> oracle(k, 0.0);
  for (int t = 0; t < trials; ++t) {
    freereg::RngStream rng = freereg::RngStream::substream(seed, t);
    freereg::MatrixTuple tuple = freereg::sample_gue_tuple(2, N, rng);
    auto ev = freereg::eigenvalues(freereg::eval_poly(p, tuple));
    for (int j = 1; j <= k; ++j) {
      double s = 0;
      for (double l : ev) s += std::pow(l, j);
      oracle[j - 1] += s / N / trials;
    }
  }
  for (int j = 0; j < k; ++j) CHECK(curve[j] == doctest::Approx(oracle[j]).epsilon(1e-8));

  std::vector<double> replay = freereg::sampled_moments(p, k, N, trials, seed);
  CHECK(replay == curve);
}

TEST_CASE("CSV round trip is exact") {
  NcPoly p = anticommutator();
  EmpiricalMeasure m = freereg::sample_spectrum(p, 30, 2, 8, "t");
  std::ostringstream out;
  freereg::write_measure_csv(m, out);
  std::string text = out.str();
  CHECK(text.substr(0, text.find('\n')) == "value,weight");

  std::istringstream in(text);
  EmpiricalMeasure back = freereg::read_measure_csv(in, m.meta());
  CHECK(back.points() == m.points());

  std::ostringstream again;
  freereg::write_measure_csv(back, again);
  CHECK(again.str() == text);  // byte-stable second generation

  nlohmann::json meta = freereg::measure_meta_json(m);
  CHECK(meta["N"] == 30);
  CHECK(meta["trials"] == 2);
  CHECK(meta["seed"] == 8);
  CHECK(meta["points"] == 60);
}
