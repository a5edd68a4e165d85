#include "freereg/tensor.hpp"

namespace freereg {

TensorPoly TensorPoly::tensor_of(const NcPoly& p, const NcPoly& q) {
  if (p.var_count() != q.var_count())
    throw DimensionError("tensor_of: operands built over different generator counts");
  TensorPoly out(p.var_count());
  for (const auto& [wp, cp] : p.terms())
    for (const auto& [wq, cq] : q.terms()) out.add_term(wp, wq, cp * cq);
  return out;
}

}  // namespace freereg
