#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "sold/dual.hpp"

namespace sold {

/// A differentiable scalar field on a chart: a function of the m coordinates,
/// evaluable over Dual numbers so that value and first partials come out of a
/// single pass. Closed under arithmetic and the elementary functions below.
class ScalarFieldExpr {
 public:
  using Fn = std::function<Dual(std::span<const Dual>)>;

  ScalarFieldExpr() : ScalarFieldExpr(0.0) {}
  explicit ScalarFieldExpr(Fn fn) : fn_(std::make_shared<Fn>(std::move(fn))) {}
  ScalarFieldExpr(double c)  // NOLINT: implicit by design, constants appear everywhere
      : fn_(std::make_shared<Fn>([c](std::span<const Dual>) { return Dual(c); })) {}

  static ScalarFieldExpr constant(double c) { return ScalarFieldExpr(c); }

  /// The i-th coordinate function.
  static ScalarFieldExpr coord(int i) {
    return ScalarFieldExpr([i](std::span<const Dual> x) { return x[i]; });
  }

  Dual operator()(std::span<const Dual> x) const { return (*fn_)(x); }

  struct Jet {
    double value = 0.0;
    std::array<double, kMaxDim> grad{};
  };

  /// Value and all m first partials at a point, via identity-seeded duals.
  Jet jet(std::span<const double> x) const {
    std::vector<Dual> seeded(x.size());
    const int m = static_cast<int>(x.size());
    for (int i = 0; i < m; ++i) seeded[i] = Dual::variable(x[i], i, m);
    Dual d = (*fn_)(seeded);
    Jet j;
    j.value = d.val;
    for (int i = 0; i < d.dim; ++i) j.grad[i] = d.grad[i];
    return j;
  }

  double value(std::span<const double> x) const {
    std::vector<Dual> pts(x.size());
    for (size_t i = 0; i < x.size(); ++i) pts[i] = Dual(x[i]);
    return (*fn_)(pts).val;
  }

 private:
  std::shared_ptr<const Fn> fn_;
};

inline ScalarFieldExpr operator+(const ScalarFieldExpr& a, const ScalarFieldExpr& b) {
  return ScalarFieldExpr([a, b](std::span<const Dual> x) { return a(x) + b(x); });
}
inline ScalarFieldExpr operator-(const ScalarFieldExpr& a, const ScalarFieldExpr& b) {
  return ScalarFieldExpr([a, b](std::span<const Dual> x) { return a(x) - b(x); });
}
inline ScalarFieldExpr operator-(const ScalarFieldExpr& a) {
  return ScalarFieldExpr([a](std::span<const Dual> x) { return -a(x); });
}
inline ScalarFieldExpr operator*(const ScalarFieldExpr& a, const ScalarFieldExpr& b) {
  return ScalarFieldExpr([a, b](std::span<const Dual> x) { return a(x) * b(x); });
}
inline ScalarFieldExpr operator/(const ScalarFieldExpr& a, const ScalarFieldExpr& b) {
  return ScalarFieldExpr([a, b](std::span<const Dual> x) { return a(x) / b(x); });
}

inline ScalarFieldExpr sin(const ScalarFieldExpr& a) {
  return ScalarFieldExpr([a](std::span<const Dual> x) { return sin(a(x)); });
}
inline ScalarFieldExpr cos(const ScalarFieldExpr& a) {
  return ScalarFieldExpr([a](std::span<const Dual> x) { return cos(a(x)); });
}
inline ScalarFieldExpr exp(const ScalarFieldExpr& a) {
  return ScalarFieldExpr([a](std::span<const Dual> x) { return exp(a(x)); });
}
inline ScalarFieldExpr sqrt(const ScalarFieldExpr& a) {
  return ScalarFieldExpr([a](std::span<const Dual> x) { return sqrt(a(x)); });
}
inline ScalarFieldExpr pow(const ScalarFieldExpr& a, double e) {
  return ScalarFieldExpr([a, e](std::span<const Dual> x) { return pow(a(x), e); });
}

/// Reinterprets an expression as a function of the tangent coordinates only:
/// the normal coordinates are pinned to zero before evaluation. Used to extend
/// fields given along the submanifold constantly in the normal directions.
ScalarFieldExpr pin_normal_coords(const ScalarFieldExpr& e, int normal_dim);

}  // namespace sold
