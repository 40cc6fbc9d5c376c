#pragma once

#include <vector>

#include "metawave/geometry.hpp"

namespace metawave {

/// Quadrature rule on the reference triangle conv{(0,0),(1,0),(0,1)}.
/// Weights are strictly positive and sum to the reference area 1/2.
struct QuadratureRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
  int degree = 0;  // polynomials up to this total degree integrate exactly

  int size() const { return static_cast<int>(points.size()); }
};

/// Quadrature rule on the reference edge [0,1]; weights sum to 1.
struct EdgeRule {
  std::vector<double> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

/// Symmetric rule on the reference triangle, exact for polynomials of the
/// requested total degree.  Built as a conical (Duffy-type) product of
/// Gauss-Legendre and Gauss-Jacobi rules and then symmetrised over the
/// vertex permutation group, so the point set is invariant under the
/// affine self-maps of the triangle.
QuadratureRule triangle_rule(int degree);

/// Gauss-Legendre rule with n points on [0,1]; exact up to degree 2n-1.
EdgeRule edge_rule(int npoints);

/// Shifted Legendre polynomial on [0,1]: legendre01(m, t) = P_m(2t - 1).
/// Orthogonal with \int_0^1 P_a P_b dt = delta_ab / (2a + 1).
double legendre01(int m, double t);

}  // namespace metawave
