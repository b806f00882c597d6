#include "sold/expr.hpp"

namespace sold {

ScalarFieldExpr pin_normal_coords(const ScalarFieldExpr& e, int normal_dim) {
  return ScalarFieldExpr([e, normal_dim](std::span<const Dual> x) {
    std::vector<Dual> pinned(x.begin(), x.end());
    for (int a = 0; a < normal_dim; ++a) pinned[a] = Dual(0.0);
    return e(pinned);
  });
}

}  // namespace sold
