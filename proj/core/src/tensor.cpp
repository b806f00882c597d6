#include "sold/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace sold {

namespace {
size_t pow_int(int base, int exp) {
  size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<size_t>(base);
  return r;
}
}  // namespace

TensorValue::TensorValue(int m_, int p_, int q_)
    : m(m_), p(p_), q(q_), v(pow_int(m_, p_ + q_), 0.0) {}

size_t TensorValue::flat(std::span<const int> idx) const {
  size_t f = 0;
  for (int i : idx) f = f * static_cast<size_t>(m) + static_cast<size_t>(i);
  return f;
}

double TensorValue::max_abs() const {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::abs(x));
  return r;
}

TensorField::TensorField(int m, int p, int q, Symmetry sym)
    : m_(m), p_(p), q_(q), sym_(sym), comps_(pow_int(m, p + q), ScalarFieldExpr(0.0)) {}

TensorField TensorField::identity_1_1(int m) {
  TensorField t(m, 1, 1);
  for (int i = 0; i < m; ++i) t.component({i, i}) = ScalarFieldExpr(1.0);
  return t;
}

TensorField TensorField::constant(int m, int p, int q, const std::vector<double>& comps,
                                  Symmetry sym) {
  TensorField t(m, p, q, sym);
  if (comps.size() != t.comps_.size())
    throw std::invalid_argument("TensorField::constant: component count mismatch");
  for (size_t i = 0; i < comps.size(); ++i) t.comps_[i] = ScalarFieldExpr(comps[i]);
  return t;
}

size_t TensorField::flat(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != rank())
    throw std::invalid_argument("TensorField: index rank mismatch");
  size_t f = 0;
  for (int i : idx) f = f * static_cast<size_t>(m_) + static_cast<size_t>(i);
  return f;
}

const ScalarFieldExpr& TensorField::component(std::span<const int> idx) const {
  return comps_[flat(idx)];
}

ScalarFieldExpr& TensorField::component(std::span<const int> idx) { return comps_[flat(idx)]; }

TensorValue TensorField::eval(const Point& pt) const {
  TensorValue out(m_, p_, q_);
  std::vector<Dual> x(pt.coords.size());
  for (size_t i = 0; i < x.size(); ++i) x[i] = Dual(pt.coords[i]);
  for (size_t f = 0; f < comps_.size(); ++f) out.v[f] = comps_[f](x).val;
  return out;
}

TensorValue TensorField::eval(const Point& pt, const SliceChart& chart) const {
  require_in_domain(chart, pt);
  return eval(pt);
}

TensorJet TensorField::jet(const Point& pt) const {
  TensorJet out;
  out.value = TensorValue(m_, p_, q_);
  out.partial.assign(m_, TensorValue(m_, p_, q_));
  std::vector<Dual> x(pt.coords.size());
  for (int i = 0; i < m_; ++i) x[i] = Dual::variable(pt.coords[i], i, m_);
  for (size_t f = 0; f < comps_.size(); ++f) {
    Dual d = comps_[f](x);
    out.value.v[f] = d.val;
    for (int k = 0; k < m_; ++k) out.partial[k].v[f] = (k < d.dim) ? d.grad[k] : 0.0;
  }
  return out;
}

TensorValue eval_tensor(const TensorField& t, const SliceChart& chart, const Point& pt) {
  return t.eval(pt, chart);
}

TensorJet eval_jacobian(const TensorField& t, const SliceChart& chart, const Point& pt) {
  require_in_domain(chart, pt);
  return t.jet(pt);
}

}  // namespace sold
