#include "freereg/calculus.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "freereg/errors.hpp"
#include "freereg/trace.hpp"

namespace freereg {

TensorPoly diff(const NcPoly& p, int j) {
  if (j < 1 || j > p.var_count())
    throw InvalidArgumentError("diff: generator index out of range");
  TensorPoly out(p.var_count());
  for (const auto& [w, c] : p.terms()) {
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
      if (w[pos] != j) continue;
      Word left(w.begin(), w.begin() + pos);
      Word right(w.begin() + pos + 1, w.end());
      out.add_term(std::move(left), std::move(right), c);
    }
  }
  return out;
}

NcPoly sharp(const TensorPoly& t, const NcPoly& q) {
  if (t.var_count() != q.var_count())
    throw DimensionError("sharp: operands built over different generator counts");
  NcPoly out(q.var_count());
  for (const auto& [uv, c] : t.terms())
    for (const auto& [w, d] : q.terms())
      out.add_term(concat(uv.first, concat(w, uv.second)), c * d);
  return out;
}

TensorPoly sharp(const TensorPoly& t, const TensorPoly& s) {
  if (t.var_count() != s.var_count())
    throw DimensionError("sharp: operands built over different generator counts");
  TensorPoly out(t.var_count());
  for (const auto& [uv, c] : t.terms())
    for (const auto& [ab, d] : s.terms())
      out.add_term(concat(uv.first, ab.first), concat(ab.second, uv.second), c * d);
  return out;
}

TensorPoly flip(const TensorPoly& t) {
  TensorPoly out(t.var_count());
  for (const auto& [uv, c] : t.terms()) out.add_term(uv.second, uv.first, c);
  return out;
}

NcPoly number_op(const NcPoly& p) {
  NcPoly out(p.var_count());
  for (const auto& [w, c] : p.terms()) out.add_term(w, Scalar(word_degree(w)) * c);
  return out;
}

NcPoly number_op_i(const NcPoly& p, int i) {
  if (i < 1 || i > p.var_count())
    throw InvalidArgumentError("number_op_i: generator index out of range");
  NcPoly out(p.var_count());
  for (const auto& [w, c] : p.terms()) out.add_term(w, Scalar(count_letter(w, i)) * c);
  return out;
}

namespace {

CPoly twist_terms(const CPoly& p, double t) {
  CPoly out(p.var_count());
  for (const auto& [w, c] : p.terms()) {
    double theta = 2.0 * std::numbers::pi * t * word_degree(w);
    out.add_term(w, c * std::polar(1.0, theta));
  }
  return out;
}

}  // namespace

CPoly phi_t(const NcPoly& p, double t) { return twist_terms(to_cpoly(p), t); }

CPoly phi_t(const CPoly& p, double t) { return twist_terms(p, t); }

NcPoly fourier_extract(const NcPoly& p, int m) {
  if (m < 0) throw InvalidArgumentError("fourier_extract: negative degree");
  NcPoly out(p.var_count());
  int deg = p.degree();
  if (deg == kDegreeOfZero || m > deg) return out;  // no degree-m component

  // Average phi_{k/(deg+1)}(p) against exp(-2 pi i m k/(deg+1)).  Sampling at
  // deg+1 equally spaced twists makes the character sums exactly 0 or 1 for
  // every degree present, up to float round-off removed below.
  int nodes = deg + 1;
  CPoly acc(p.var_count());
  for (int k = 0; k < nodes; ++k) {
    double t = static_cast<double>(k) / nodes;
    double theta = -2.0 * std::numbers::pi * m * k / nodes;
    CPoly twisted = phi_t(p, t);
    CPoly weighted(p.var_count());
    for (const auto& [w, c] : twisted.terms())
      weighted.add_term(w, c * std::polar(1.0 / nodes, theta));
    acc += weighted;
  }
  for (const auto& [w, c] : acc.terms()) {
    Scalar exact(rationalize(c.real()), rationalize(c.imag()));
    out.add_term(w, exact);
  }
  return out;
}

TensorPoly hochschild_defect(const NcPoly& p) {
  int n = p.var_count();
  TensorPoly acc(n);
  for (int i = 1; i <= n; ++i) {
    TensorPoly commutator =
        TensorPoly::elementary(n, Word{i}, Word{}) - TensorPoly::elementary(n, Word{}, Word{i});
    acc += sharp(diff(p, i), commutator);
  }
  acc -= TensorPoly::tensor_of(p, NcPoly::constant(n, Scalar(1)));
  acc += TensorPoly::tensor_of(NcPoly::constant(n, Scalar(1)), p);
  return acc;
}

NcPoly delta_reduce(const NcPoly& p, int j, const TraceFunctional& tau) {
  TensorPoly d = diff(p, j);
  NcPoly out(p.var_count());
  for (const auto& [uv, c] : d.terms()) out.add_term(uv.second, tau(uv.first) * c);
  return out;
}

}  // namespace freereg
