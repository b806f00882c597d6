#include "sold/calculus.hpp"

#include <stdexcept>

namespace sold {

TensorValue lie_derivative(const TensorField& x_field, const TensorField& t, const Point& pt) {
  if (x_field.contravariant_rank() != 1 || x_field.covariant_rank() != 0)
    throw std::invalid_argument("lie_derivative: X must be a (1,0) field");
  if (x_field.dim() != t.dim())
    throw std::invalid_argument("lie_derivative: fields on different charts");

  const int m = t.dim();
  const int p = t.contravariant_rank();
  const int q = t.covariant_rank();
  TensorJet tj = t.jet(pt);
  TensorJet xj = x_field.jet(pt);

  TensorValue out(m, p, q);
  std::vector<int> swapped(q + p);
  for_each_index(m, q + p, [&](std::span<const int> idx) {
    // transport term X^k d_k T
    double s = 0.0;
    for (int k = 0; k < m; ++k) s += xj.value.at({k}) * tj.partial[k].at(idx);
    // covariant slots: + (d_{u_i} X^k) T[u_i -> k]
    for (int i = 0; i < q; ++i) {
      swapped.assign(idx.begin(), idx.end());
      for (int k = 0; k < m; ++k) {
        swapped[i] = k;
        s += xj.partial[idx[i]].at({k}) * tj.value.at(swapped);
      }
    }
    // contravariant slots: - (d_k X^{v_j}) T[v_j -> k]
    for (int j = 0; j < p; ++j) {
      swapped.assign(idx.begin(), idx.end());
      for (int k = 0; k < m; ++k) {
        swapped[q + j] = k;
        s -= xj.partial[k].at({idx[q + j]}) * tj.value.at(swapped);
      }
    }
    out.at(idx) = s;
  });
  return out;
}

TensorValue covariant_derivative(const TensorField& t, const MetricField& g, const Point& pt) {
  const int m = t.dim();
  const int p = t.contravariant_rank();
  const int q = t.covariant_rank();
  TensorJet tj = t.jet(pt);
  ChristoffelValue gamma = christoffels(g, pt);

  // Result layout: (k, u_1..u_q, v_1..v_p) with k the new leading covariant slot.
  TensorValue out(m, p, q + 1);
  std::vector<int> inner(q + p), swapped(q + p);
  for_each_index(m, q + p + 1, [&](std::span<const int> idx) {
    const int k = idx[0];
    inner.assign(idx.begin() + 1, idx.end());
    double s = tj.partial[k].at(inner);
    for (int j = 0; j < p; ++j) {
      swapped = inner;
      for (int l = 0; l < m; ++l) {
        swapped[q + j] = l;
        s += gamma.at(inner[q + j], k, l) * tj.value.at(swapped);
      }
    }
    for (int i = 0; i < q; ++i) {
      swapped = inner;
      for (int l = 0; l < m; ++l) {
        swapped[i] = l;
        s -= gamma.at(l, k, inner[i]) * tj.value.at(swapped);
      }
    }
    out.at(idx) = s;
  });
  return out;
}

TensorValue nijenhuis(const TensorField& a, const Point& pt) {
  if (a.contravariant_rank() != 1 || a.covariant_rank() != 1)
    throw std::invalid_argument("nijenhuis: field must have valence (1,1)");
  const int m = a.dim();
  TensorJet aj = a.jet(pt);
  auto A = [&](int k, int i) { return aj.value.at({i, k}); };      // A^k_i
  auto dA = [&](int l, int k, int i) { return aj.partial[l].at({i, k}); };

  TensorValue out(m, 1, 2);  // N^k_{ij}, layout (i, j, k)
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        double s = 0.0;
        for (int l = 0; l < m; ++l) {
          s += A(l, i) * dA(l, k, j) - A(l, j) * dA(l, k, i);
          s += A(k, l) * (dA(j, l, i) - dA(i, l, j));
        }
        out.at({i, j, k}) = s;
      }
  return out;
}

Eigen::VectorXd musical_flat(const MetricField& g, const Eigen::VectorXd& y, const Point& pt) {
  return g.matrix(pt).transpose() * y;  // (flat Y)_i = g_ij Y^j; g symmetric anyway
}

Eigen::VectorXd musical_sharp(const MetricField& g, const Eigen::VectorXd& xi, const Point& pt) {
  return g.inverse(pt) * xi;
}

TensorField kahler_form(const MetricField& g, const TensorField& j) {
  if (j.contravariant_rank() != 1 || j.covariant_rank() != 1)
    throw std::invalid_argument("kahler_form: J must have valence (1,1)");
  const int m = g.dim();
  TensorField omega(m, 0, 2, Symmetry::antisymmetric_cov);
  for (int i = 0; i < m; ++i)
    for (int l = 0; l < m; ++l) {
      // Omega_il = g_kl J^k_i
      ScalarFieldExpr e(0.0);
      for (int k = 0; k < m; ++k)
        e = e + g.tensor().component({k, l}) * j.component({i, k});
      omega.component({i, l}) = e;
    }
  return omega;
}

void check_almost_hermitian(const MetricField& g, const TensorField& j,
                            const std::vector<Point>& pts, double tol) {
  const int m = g.dim();
  for (const Point& pt : pts) {
    TensorValue jv = j.eval(pt);
    Eigen::MatrixXd J(m, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) J(r, c) = jv.at({c, r});  // J^r_c
    Eigen::MatrixXd G = g.matrix(pt);
    double r1 = (J * J + Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
    double r2 = (J.transpose() * G * J - G).cwiseAbs().maxCoeff();
    if (r1 > tol) throw std::runtime_error("almost Hermitian check failed: J^2 != -Id");
    if (r2 > tol) throw std::runtime_error("almost Hermitian check failed: g(J.,J.) != g");
  }
}

TensorValue exterior_derivative_2form(const TensorField& omega, const Point& pt) {
  if (omega.contravariant_rank() != 0 || omega.covariant_rank() != 2)
    throw std::invalid_argument("exterior_derivative_2form: valence must be (0,2)");
  const int m = omega.dim();
  TensorJet oj = omega.jet(pt);
  TensorValue out(m, 0, 3);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        out.at({i, j, k}) = oj.partial[i].at({j, k}) + oj.partial[j].at({k, i}) +
                            oj.partial[k].at({i, j});
  return out;
}

}  // namespace sold
