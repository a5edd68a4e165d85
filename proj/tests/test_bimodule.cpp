// Matrix-level derivation identity: the defect operator built from the
// evaluated difference quotients annihilates every matrix unit.  The exact
// rational path must cancel to literal zero; the float path to round-off.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "freereg/bimodule.hpp"
#include "freereg/errors.hpp"
#include "freereg/rng.hpp"
#include "helpers.hpp"

using freereg::NcPoly;
using freereg::Scalar;

TEST_CASE("exact rational path cancels to zero at every small dimension") {
  freereg::RngStream rng(1001);
  for (int N = 1; N <= 4; ++N) {
    for (int rep = 0; rep < 8; ++rep) {
      int n = 1 + static_cast<int>(rng.next_u64() % 2);
      NcPoly p = testutil::random_poly(rng, n, 4, 4);
      freereg::QMatrixTuple t = freereg::random_rational_tuple(n, N, rng);
      freereg::QMatrix u = freereg::random_rational_matrix(N, rng);
      freereg::QMatrix v = freereg::random_rational_matrix(N, rng);
      mpq_class defect = freereg::bimodule_defect_norm_sq(p, t, u, v);
      CHECK(sgn(defect) == 0);
    }
  }
}

TEST_CASE("constant polynomial: both sides vanish") {
  freereg::RngStream rng(5);
  freereg::QMatrixTuple t = freereg::random_rational_tuple(2, 3, rng);
  freereg::QMatrix u = freereg::random_rational_matrix(3, rng);
  freereg::QMatrix v = freereg::random_rational_matrix(3, rng);
  NcPoly c = NcPoly::constant(2, Scalar::ratio(7, 2));
  CHECK(sgn(freereg::bimodule_defect_norm_sq(c, t, u, v)) == 0);
}

TEST_CASE("float path stays at round-off and the bracket scale is genuine") {
  freereg::RngStream master(2002);
  for (int rep = 0; rep < 6; ++rep) {
    freereg::RngStream rng = freereg::RngStream::substream(2002, rep);
    int n = 1 + static_cast<int>(rng.next_u64() % 2);
    freereg::RngStream prng(900 + rep);
    NcPoly p = testutil::random_poly(prng, n, 3, 4);
    if (p.is_zero()) continue;
    freereg::MatrixTuple t = freereg::sample_gue_tuple(n, 50, rng);
    freereg::CMatrix u = freereg::sample_gue(50, rng);
    freereg::CMatrix v = freereg::sample_gue(50, rng);
    freereg::BimoduleResidual res = freereg::bimodule_commutator_residual(p, t, u, v);
    CHECK(res.relative() <= 1e-9);
    // the cancellation must be of something: a degree >= 1 polynomial makes
    // the bracket part carry real Hilbert-Schmidt mass
    if (p.degree() >= 1) CHECK(res.scale > 1e-3);
  }
}

TEST_CASE("dimension mismatches are rejected") {
  freereg::RngStream rng(3);
  freereg::QMatrixTuple t = freereg::random_rational_tuple(2, 3, rng);
  freereg::QMatrix u = freereg::random_rational_matrix(2, rng);  // wrong size
  freereg::QMatrix v = freereg::random_rational_matrix(3, rng);
  NcPoly p = NcPoly::generator(2, 1);
  CHECK_THROWS_AS(freereg::bimodule_defect_norm_sq(p, t, u, v), freereg::DimensionError);
}
