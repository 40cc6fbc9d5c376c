#pragma once

#include <Eigen/Dense>

namespace metawave {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Axis-aligned rectangle [x0,x1] x [y0,y1].
struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool contains(const Vec2& p, double tol = 0.0) const {
    return p.x() >= x0 - tol && p.x() <= x1 + tol && p.y() >= y0 - tol &&
           p.y() <= y1 + tol;
  }
};

/// Affine map F(xhat) = origin + J * xhat from the reference triangle
/// with vertices (0,0), (1,0), (0,1) onto a physical triangle.
///
/// Cells are stored counter-clockwise, so det(J) > 0 throughout.
struct CellGeometry {
  Vec2 origin;
  Mat2 J;
  Mat2 Jinv;
  double detJ = 0.0;

  static CellGeometry affine(const Vec2& a, const Vec2& b, const Vec2& c) {
    CellGeometry g;
    g.origin = a;
    g.J.col(0) = b - a;
    g.J.col(1) = c - a;
    g.detJ = g.J.determinant();
    g.Jinv = g.J.inverse();
    return g;
  }

  Vec2 map(const Vec2& ref) const { return origin + J * ref; }
  Vec2 pull_back(const Vec2& phys) const { return Jinv * (phys - origin); }

  /// Contravariant (Piola) push-forward: preserves normal fluxes.
  Vec2 piola(const Vec2& vhat) const { return (J * vhat) / detJ; }

  double area() const { return 0.5 * detJ; }
};

/// Rotate a vector by -90 degrees: (x,y) -> (y,-x).  Applied to a unit
/// tangent this yields the unit normal pointing to the right of the
/// direction of travel.
inline Vec2 rotate_cw(const Vec2& t) { return Vec2(t.y(), -t.x()); }

}  // namespace metawave
