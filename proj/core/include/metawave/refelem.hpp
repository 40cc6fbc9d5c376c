#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "metawave/geometry.hpp"

namespace metawave {

/// Sparse bivariate polynomial, sum of c * x^ax * y^ay terms.
class Poly2 {
 public:
  struct Term {
    int ax = 0, ay = 0;
    double c = 0.0;
  };

  Poly2() = default;
  static Poly2 monomial(int ax, int ay, double c = 1.0) {
    Poly2 p;
    if (c != 0.0) p.terms_.push_back({ax, ay, c});
    return p;
  }

  double eval(const Vec2& x) const;
  Poly2 dx() const;
  Poly2 dy() const;

  Poly2& operator+=(const Poly2& other);
  Poly2& operator*=(double s);
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator*(double s, Poly2 p) { return p *= s; }

  /// Exact integral over the reference triangle conv{(0,0),(1,0),(0,1)},
  /// using \int x^a y^b = a! b! / (a+b+2)!.
  double integral_ref() const;

  const std::vector<Term>& terms() const { return terms_; }

 private:
  std::vector<Term> terms_;
};

/// Vector-valued polynomial field.
struct VPoly2 {
  Poly2 x, y;
  Poly2 div() const { return x.dx() + y.dy(); }
  Vec2 eval(const Vec2& p) const { return Vec2(x.eval(p), y.eval(p)); }
};

enum class FamilyKind { RTN, BDM, DGScalar, DGVector };

/// A finite element family on the reference triangle.  `degree` is the
/// family subscript: RTN_l (l >= 0), BDM_l (l >= 1), or the polynomial
/// degree for the discontinuous spaces.
struct ElementFamily {
  FamilyKind kind = FamilyKind::DGScalar;
  int degree = 0;

  static ElementFamily rtn(int l) {
    if (l < 0) throw std::invalid_argument("RTN degree must be >= 0");
    return {FamilyKind::RTN, l};
  }
  static ElementFamily bdm(int l) {
    if (l < 1) throw std::invalid_argument("BDM degree must be >= 1");
    return {FamilyKind::BDM, l};
  }
  static ElementFamily dg_scalar(int d) {
    if (d < 0) throw std::invalid_argument("DG degree must be >= 0");
    return {FamilyKind::DGScalar, d};
  }
  static ElementFamily dg_vector(int d) {
    if (d < 0) throw std::invalid_argument("DG degree must be >= 0");
    return {FamilyKind::DGVector, d};
  }

  bool hdiv() const { return kind == FamilyKind::RTN || kind == FamilyKind::BDM; }
  bool vector_valued() const { return kind != FamilyKind::DGScalar; }
  std::string name() const;
};

/// Oriented edge of the reference triangle, traversed counter-clockwise:
/// e0: (0,0)->(1,0), e1: (1,0)->(0,1), e2: (0,1)->(0,0).
struct RefEdge {
  Vec2 a, b;
  Vec2 normal;  // outward unit normal
  double length;
};

const std::array<RefEdge, 3>& ref_edges();

/// Nodal basis on the reference triangle.
///
/// H(div) families (RTN/BDM) are constructed dual to:
///  - per edge e, moments \int_e (v.n) P_m(s) ds for m = 0..l against
///    shifted Legendre polynomials in the arclength parameter (traversal
///    direction counter-clockwise, n outward);
///  - interior moments \int_K v.rho against rho in P_{l-1}(K)^2 (RTN_l)
///    or rho in RTN_{l-2}(K) (BDM_l).
/// Local DOF order: edge-major then moment (l = 3*edge + m), interior last.
///
/// DG families carry an orthogonal modal basis with psi_0 = 1 (plain
/// Gram-Schmidt over graded monomials, no normalisation); the vector
/// variant interleaves components: basis 2*i+c = psi_i * e_c.
class ReferenceElement {
 public:
  explicit ReferenceElement(const ElementFamily& family);

  const ElementFamily& family() const { return family_; }
  int dim() const { return dim_; }
  int edge_moments() const { return n_edge_moments_; }  // per edge, 0 for DG
  int n_interior() const { return dim_ - 3 * n_edge_moments_; }

  // Vector families: rows are basis functions, columns are components.
  Eigen::MatrixXd eval_vector(const Vec2& p) const;
  Eigen::VectorXd eval_div(const Vec2& p) const;  // H(div) only

  // Scalar family.
  Eigen::VectorXd eval_scalar(const Vec2& p) const;
  Eigen::MatrixXd eval_grad(const Vec2& p) const;  // rows basis, cols d/dx d/dy

  /// Reference L2 norms ||psi_i||^2 of the orthogonal scalar modes.
  const Eigen::VectorXd& scalar_norms() const;

  /// All reference DOF functionals applied to a smooth field (H(div)).
  Eigen::VectorXd dofs_of(const std::function<Vec2(const Vec2&)>& v) const;
  /// Interior functionals only (H(div)); length n_interior().
  Eigen::VectorXd interior_dofs_of(const std::function<Vec2(const Vec2&)>& v) const;

  /// Condition number of the generalised Vandermonde matrix (diagnostic).
  double vandermonde_condition() const { return vandermonde_cond_; }

 private:
  void build_hdiv();
  void build_dg();

  ElementFamily family_;
  int dim_ = 0;
  int n_edge_moments_ = 0;
  double vandermonde_cond_ = 1.0;

  // Prime (spanning) basis and nodal coefficients: nodal_j = sum_m C(m,j) prime_m.
  std::vector<VPoly2> prime_;       // H(div) families
  std::vector<Poly2> prime_div_;    // divergences of prime_
  std::vector<VPoly2> interior_test_;
  Eigen::MatrixXd coeff_;

  std::vector<Poly2> scalar_basis_;  // DG modal basis (monomial combos)
  Eigen::VectorXd scalar_norms_;
};

}  // namespace metawave
