#include "sold/metric.hpp"

#include <stdexcept>

namespace sold {

namespace {
constexpr double kSpdFloor = 1e-10;   // smallest admissible eigenvalue
constexpr double kSymTol = 1e-12;
}  // namespace

MetricField::MetricField(TensorField g) : g_(std::move(g)) {
  if (g_.contravariant_rank() != 0 || g_.covariant_rank() != 2)
    throw std::invalid_argument("MetricField: valence must be (0,2)");
}

Eigen::MatrixXd MetricField::matrix(const Point& pt) const {
  const int m = dim();
  TensorValue val = g_.eval(pt);
  Eigen::MatrixXd mat(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) mat(i, j) = val.at({i, j});
  if ((mat - mat.transpose()).cwiseAbs().maxCoeff() > kSymTol)
    throw std::runtime_error("MetricField: matrix not symmetric at evaluation point");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= kSpdFloor)
    throw std::runtime_error("MetricField: metric degenerate at evaluation point");
  return mat;
}

Eigen::MatrixXd MetricField::inverse(const Point& pt) const {
  return matrix(pt).inverse();
}

std::vector<Dual> MetricField::matrix_dual(std::span<const Dual> x) const {
  const int m = dim();
  std::vector<Dual> out(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int idx[2] = {i, j};
      out[static_cast<size_t>(i) * m + j] = g_.component(std::span<const int>(idx, 2))(x);
    }
  return out;
}

ChristoffelValue christoffels(const MetricField& g, const Point& pt) {
  const int m = g.dim();
  Eigen::MatrixXd ginv = g.inverse(pt);
  TensorJet jet = g.tensor().jet(pt);

  ChristoffelValue gamma(m);
  // Gamma^k_{ij} = 1/2 g^{kl} (d_i g_lj + d_j g_li - d_l g_ij); symmetric in i,j.
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j <= i; ++j) {
        double s = 0.0;
        for (int l = 0; l < m; ++l) {
          s += ginv(k, l) * (jet.partial[i].at({l, j}) + jet.partial[j].at({l, i}) -
                             jet.partial[l].at({i, j}));
        }
        gamma.at(k, i, j) = 0.5 * s;
        gamma.at(k, j, i) = 0.5 * s;
      }
  return gamma;
}

}  // namespace sold
