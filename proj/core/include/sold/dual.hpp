#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace sold {

/// Maximum ambient dimension supported by the forward-mode scalar type.
constexpr int kMaxDim = 8;

/// Forward-mode first-order dual number: a value together with its gradient
/// with respect to the chart coordinates. All field components are evaluated
/// through this type, so first derivatives are exact to machine precision.
struct Dual {
  double val = 0.0;
  int dim = 0;  // 0 means "constant" (broadcasts against any gradient size)
  std::array<double, kMaxDim> grad{};

  Dual() = default;
  explicit Dual(double v) : val(v) {}

  static Dual variable(double v, int index, int dimension) {
    if (dimension > kMaxDim) throw std::invalid_argument("Dual: dimension exceeds kMaxDim");
    Dual d(v);
    d.dim = dimension;
    d.grad[index] = 1.0;
    return d;
  }
};

inline int merged_dim(const Dual& a, const Dual& b) {
  return a.dim > b.dim ? a.dim : b.dim;
}

inline Dual operator+(const Dual& a, const Dual& b) {
  Dual r(a.val + b.val);
  r.dim = merged_dim(a, b);
  for (int i = 0; i < r.dim; ++i) r.grad[i] = a.grad[i] + b.grad[i];
  return r;
}

inline Dual operator-(const Dual& a, const Dual& b) {
  Dual r(a.val - b.val);
  r.dim = merged_dim(a, b);
  for (int i = 0; i < r.dim; ++i) r.grad[i] = a.grad[i] - b.grad[i];
  return r;
}

inline Dual operator-(const Dual& a) {
  Dual r(-a.val);
  r.dim = a.dim;
  for (int i = 0; i < r.dim; ++i) r.grad[i] = -a.grad[i];
  return r;
}

inline Dual operator*(const Dual& a, const Dual& b) {
  Dual r(a.val * b.val);
  r.dim = merged_dim(a, b);
  for (int i = 0; i < r.dim; ++i) r.grad[i] = a.grad[i] * b.val + a.val * b.grad[i];
  return r;
}

inline Dual operator/(const Dual& a, const Dual& b) {
  if (b.val == 0.0) throw std::domain_error("Dual: division by zero value");
  Dual r(a.val / b.val);
  r.dim = merged_dim(a, b);
  const double inv2 = 1.0 / (b.val * b.val);
  for (int i = 0; i < r.dim; ++i) r.grad[i] = (a.grad[i] * b.val - a.val * b.grad[i]) * inv2;
  return r;
}

inline Dual operator+(const Dual& a, double c) { return a + Dual(c); }
inline Dual operator+(double c, const Dual& a) { return Dual(c) + a; }
inline Dual operator-(const Dual& a, double c) { return a - Dual(c); }
inline Dual operator-(double c, const Dual& a) { return Dual(c) - a; }
inline Dual operator*(const Dual& a, double c) { return a * Dual(c); }
inline Dual operator*(double c, const Dual& a) { return Dual(c) * a; }
inline Dual operator/(const Dual& a, double c) { return a / Dual(c); }
inline Dual operator/(double c, const Dual& a) { return Dual(c) / a; }

inline Dual chain(const Dual& a, double f, double df) {
  Dual r(f);
  r.dim = a.dim;
  for (int i = 0; i < r.dim; ++i) r.grad[i] = df * a.grad[i];
  return r;
}

inline Dual sin(const Dual& a) { return chain(a, std::sin(a.val), std::cos(a.val)); }
inline Dual cos(const Dual& a) { return chain(a, std::cos(a.val), -std::sin(a.val)); }
inline Dual exp(const Dual& a) { return chain(a, std::exp(a.val), std::exp(a.val)); }

inline Dual log(const Dual& a) {
  if (a.val <= 0.0) throw std::domain_error("Dual: log of non-positive value");
  return chain(a, std::log(a.val), 1.0 / a.val);
}

inline Dual sqrt(const Dual& a) {
  if (a.val <= 0.0) throw std::domain_error("Dual: sqrt of non-positive value");
  const double s = std::sqrt(a.val);
  return chain(a, s, 0.5 / s);
}

inline Dual pow(const Dual& a, double e) {
  return chain(a, std::pow(a.val, e), e * std::pow(a.val, e - 1.0));
}

inline Dual abs(const Dual& a) { return a.val < 0.0 ? -a : a; }

}  // namespace sold
