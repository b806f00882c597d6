#pragma once

#include "sold/metric.hpp"

namespace sold {

/// Coordinate Lie derivative (L_X T) at a point; valence preserved.
TensorValue lie_derivative(const TensorField& x_field, const TensorField& t, const Point& pt);

/// Covariant derivative of T; the derivative index is the leading covariant
/// slot of the result: (nabla T)(X, Y_1..Y_q, xi_1..xi_p).
TensorValue covariant_derivative(const TensorField& t, const MetricField& g, const Point& pt);

/// Nijenhuis tensor of a (1,1) field at a point, as a (1,2) value N^k_{ij}
/// with N(U,V) = [AU,AV] - A[AU,V] - A[U,AV] + A^2[U,V].
TensorValue nijenhuis(const TensorField& a, const Point& pt);

Eigen::VectorXd musical_flat(const MetricField& g, const Eigen::VectorXd& y, const Point& pt);
Eigen::VectorXd musical_sharp(const MetricField& g, const Eigen::VectorXd& xi, const Point& pt);

/// Kahler form Omega(Y_1,Y_2) = g(J Y_1, Y_2) as a composed differentiable
/// field. Call check_almost_hermitian first; this does not sample.
TensorField kahler_form(const MetricField& g, const TensorField& j);

/// Verifies J^2 = -Id and g(J.,J.) = g(.,.) at the given points; throws on
/// failure beyond tol.
void check_almost_hermitian(const MetricField& g, const TensorField& j,
                            const std::vector<Point>& pts, double tol = 1e-10);

/// (d Omega)_ijk = d_i O_jk + d_j O_ki + d_k O_ij for an antisymmetric (0,2)
/// field; returns a fully antisymmetric (0,3) value.
TensorValue exterior_derivative_2form(const TensorField& omega, const Point& pt);

}  // namespace sold
