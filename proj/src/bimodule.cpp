#include "freereg/bimodule.hpp"

#include <cmath>
#include <complex>
#include <type_traits>
#include <utility>
#include <vector>

#include "freereg/calculus.hpp"
#include "freereg/errors.hpp"
#include "freereg/parallel.hpp"

namespace freereg {

namespace {

// One summand A (x) B of an operator x |-> sum A x B; coefficients are folded
// into A.
template <class Mat>
struct OpTerm {
  Mat a, b;
};

std::complex<double> coeff_cast(const Scalar& c, const CMatrix*) { return c.to_complex(); }
Scalar coeff_cast(const Scalar& c, const QMatrix*) { return c; }

template <class Mat, class C>
Mat scaled(Mat m, const C& c) {
  for (auto& v : m.data()) v *= c;
  return m;
}

double entry_norm_sq(const std::complex<double>& v) { return std::norm(v); }
mpq_class entry_norm_sq(const Scalar& v) { return v.re() * v.re() + v.im() * v.im(); }

// Squared HS norm of the operator sum: apply it to every matrix unit E_kl
// (the image is an outer product of an A-column with a B-row, accumulated
// entrywise so cancellation happens before anything is squared) and add up
// squared Frobenius norms.
template <class Mat, class Acc>
Acc operator_norm_sq(const std::vector<OpTerm<Mat>>& terms, int N) {
  using Entry = std::remove_reference_t<decltype(std::declval<Mat>().at(0, 0))>;
  std::vector<Acc> per_column(static_cast<std::size_t>(N), Acc(0));
  parallel_for(static_cast<std::size_t>(N), [&](std::size_t k0, std::size_t k1) {
    std::vector<Entry> image(static_cast<std::size_t>(N) * N);
    for (std::size_t kk = k0; kk < k1; ++kk) {
      int k = static_cast<int>(kk);
      Acc acc(0);
      for (int l = 0; l < N; ++l) {
        for (auto& v : image) v = Entry(0);
        for (const auto& term : terms) {
          for (int r = 0; r < N; ++r) {
            Entry left = term.a.at(r, k);
            if (entry_norm_sq(left) == 0) continue;
            for (int s = 0; s < N; ++s) image[static_cast<std::size_t>(r) * N + s] += left * term.b.at(l, s);
          }
        }
        for (const auto& v : image) acc += entry_norm_sq(v);
      }
      per_column[kk] = acc;
    }
  });
  Acc total(0);
  for (const auto& part : per_column) total += part;  // fixed order: deterministic
  return total;
}

template <class Mat, class Tuple>
void check_shapes(const NcPoly& p, const Tuple& t, const Mat& u, const Mat& v) {
  if (t.dim() == 0) throw InvalidArgumentError("bimodule residual: empty matrix tuple");
  if (p.var_count() > t.count())
    throw DimensionError("bimodule residual: polynomial uses more generators than tuple has");
  if (u.dim() != t.dim() || v.dim() != t.dim())
    throw DimensionError("bimodule residual: u, v must match the tuple dimension");
}

// Builds the summands of the defect operator and of the bracket part alone.
template <class Mat, class Tuple>
std::pair<std::vector<OpTerm<Mat>>, std::vector<OpTerm<Mat>>> build_terms(const NcPoly& p,
                                                                          const Tuple& t,
                                                                          const Mat& u,
                                                                          const Mat& v) {
  const Mat* tag = nullptr;
  Mat py = eval_poly(p, t);
  std::vector<OpTerm<Mat>> bracket;
  bracket.push_back({mul(u, py), v});                       // u P(Y) x v
  bracket.push_back({scaled(u, coeff_cast(Scalar(-1), tag)), mul(py, v)});  // -u x P(Y) v

  std::vector<OpTerm<Mat>> defect;
  for (int i = 1; i <= p.var_count(); ++i) {
    const Mat& yi = t.y[i - 1];
    TensorPoly di = diff(p, i);
    for (const auto& [ab, c] : di.terms()) {
      Mat left = mul(u, scaled(eval_word(ab.first, t), coeff_cast(c, tag)));
      Mat right = mul(eval_word(ab.second, t), v);
      defect.push_back({mul(left, yi), right});                            // +u a Y_i x b v
      defect.push_back({scaled(left, coeff_cast(Scalar(-1), tag)), mul(yi, right)});  // -u a x Y_i b v
    }
  }
  for (const auto& term : bracket)
    defect.push_back({scaled(term.a, coeff_cast(Scalar(-1), tag)), term.b});
  return {std::move(defect), std::move(bracket)};
}

}  // namespace

BimoduleResidual bimodule_commutator_residual(const NcPoly& p, const MatrixTuple& t,
                                              const CMatrix& u, const CMatrix& v) {
  check_shapes(p, t, u, v);
  auto [defect, bracket] = build_terms(p, t, u, v);
  int N = t.dim();
  BimoduleResidual out;
  out.absolute = std::sqrt(operator_norm_sq<CMatrix, double>(defect, N));
  out.scale = std::sqrt(operator_norm_sq<CMatrix, double>(bracket, N));
  return out;
}

mpq_class bimodule_defect_norm_sq(const NcPoly& p, const QMatrixTuple& t, const QMatrix& u,
                                  const QMatrix& v) {
  check_shapes(p, t, u, v);
  auto [defect, bracket] = build_terms(p, t, u, v);
  (void)bracket;
  return operator_norm_sq<QMatrix, mpq_class>(defect, t.dim());
}

}  // namespace freereg
