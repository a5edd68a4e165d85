#include "freereg/poly.hpp"

#include <algorithm>

namespace freereg {

CPoly to_cpoly(const NcPoly& p) {
  CPoly out(p.var_count());
  for (const auto& [w, c] : p.terms()) out.add_term(w, c.to_complex());
  return out;
}

double max_coeff_abs(const CPoly& p) {
  double best = 0.0;
  for (const auto& [w, c] : p.terms()) best = std::max(best, std::abs(c));
  return best;
}

double max_coeff_dist(const CPoly& a, const CPoly& b) {
  return max_coeff_abs(a - b);
}

}  // namespace freereg
