#include "metawave/refelem.hpp"

#include <cmath>

#include "metawave/quadrature.hpp"

namespace metawave {

double Poly2::eval(const Vec2& x) const {
  double s = 0.0;
  for (const auto& t : terms_)
    s += t.c * std::pow(x.x(), t.ax) * std::pow(x.y(), t.ay);
  return s;
}

Poly2 Poly2::dx() const {
  Poly2 p;
  for (const auto& t : terms_)
    if (t.ax > 0) p.terms_.push_back({t.ax - 1, t.ay, t.c * t.ax});
  return p;
}

Poly2 Poly2::dy() const {
  Poly2 p;
  for (const auto& t : terms_)
    if (t.ay > 0) p.terms_.push_back({t.ax, t.ay - 1, t.c * t.ay});
  return p;
}

Poly2& Poly2::operator+=(const Poly2& other) {
  for (const auto& t : other.terms_) {
    bool merged = false;
    for (auto& mine : terms_) {
      if (mine.ax == t.ax && mine.ay == t.ay) {
        mine.c += t.c;
        merged = true;
        break;
      }
    }
    if (!merged) terms_.push_back(t);
  }
  return *this;
}

Poly2& Poly2::operator*=(double s) {
  for (auto& t : terms_) t.c *= s;
  return *this;
}

double Poly2::integral_ref() const {
  auto factorial = [](int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  double s = 0.0;
  for (const auto& t : terms_)
    s += t.c * factorial(t.ax) * factorial(t.ay) / factorial(t.ax + t.ay + 2);
  return s;
}

std::string ElementFamily::name() const {
  switch (kind) {
    case FamilyKind::RTN:
      return "RTN" + std::to_string(degree);
    case FamilyKind::BDM:
      return "BDM" + std::to_string(degree);
    case FamilyKind::DGScalar:
      return "P" + std::to_string(degree);
    case FamilyKind::DGVector:
      return "P" + std::to_string(degree) + "^2";
  }
  return "?";
}

const std::array<RefEdge, 3>& ref_edges() {
  static const std::array<RefEdge, 3> edges = {{
      {Vec2(0, 0), Vec2(1, 0), Vec2(0, -1), 1.0},
      {Vec2(1, 0), Vec2(0, 1), Vec2(M_SQRT1_2, M_SQRT1_2), M_SQRT2},
      {Vec2(0, 1), Vec2(0, 0), Vec2(-1, 0), 1.0},
  }};
  return edges;
}

namespace {

// Graded monomial exponents of P_d: degree-major, x-power descending.
std::vector<std::pair<int, int>> monomials(int d) {
  std::vector<std::pair<int, int>> exps;
  for (int g = 0; g <= d; ++g)
    for (int a = g; a >= 0; --a) exps.emplace_back(a, g - a);
  return exps;
}

// Prime basis of the full vector polynomial space P_l(K)^2.
std::vector<VPoly2> vector_monomials(int l) {
  std::vector<VPoly2> prime;
  for (int c = 0; c < 2; ++c)
    for (const auto& [a, b] : monomials(l)) {
      VPoly2 v;
      (c == 0 ? v.x : v.y) = Poly2::monomial(a, b);
      prime.push_back(v);
    }
  return prime;
}

// Prime basis of RTN_l = P_l^2 + x H_l, H_l the homogeneous degree-l part.
std::vector<VPoly2> rtn_prime(int l) {
  auto prime = vector_monomials(l);
  for (int a = l; a >= 0; --a) {
    VPoly2 v;
    v.x = Poly2::monomial(a + 1, l - a);
    v.y = Poly2::monomial(a, l - a + 1);
    prime.push_back(v);
  }
  return prime;
}

// Prime basis of the rotated space N_l = P_l^2 + x^perp H_l, x^perp = (-y, x).
// Interior moments against N_{l-2} make the BDM_l edge+interior functional
// set unisolvent; moments against the unrotated RTN_{l-2} are degenerate on
// the subspace of P_l^2 with vanishing normal trace.
std::vector<VPoly2> nedelec_prime(int l) {
  auto prime = vector_monomials(l);
  for (int a = l; a >= 0; --a) {
    VPoly2 v;
    v.x = Poly2::monomial(a, l - a + 1);
    v.x *= -1.0;
    v.y = Poly2::monomial(a + 1, l - a);
    prime.push_back(v);
  }
  return prime;
}

}  // namespace

ReferenceElement::ReferenceElement(const ElementFamily& family)
    : family_(family) {
  if (family_.hdiv())
    build_hdiv();
  else
    build_dg();
}

void ReferenceElement::build_hdiv() {
  const int l = family_.degree;
  n_edge_moments_ = l + 1;

  if (family_.kind == FamilyKind::RTN) {
    prime_ = rtn_prime(l);
    if (l >= 1) interior_test_ = vector_monomials(l - 1);
  } else {
    prime_ = vector_monomials(l);
    if (l >= 2) interior_test_ = nedelec_prime(l - 2);
  }
  dim_ = static_cast<int>(prime_.size());
  if (dim_ != 3 * n_edge_moments_ + static_cast<int>(interior_test_.size()))
    throw std::logic_error("reference element: dof count mismatch");

  prime_div_.reserve(prime_.size());
  for (const auto& v : prime_) prime_div_.push_back(v.div());

  // Generalised Vandermonde: V(i,j) = dof_i(prime_j).
  const EdgeRule er = edge_rule(8);
  const QuadratureRule tr = triangle_rule(2 * l + 4);
  Eigen::MatrixXd V(dim_, dim_);
  for (int j = 0; j < dim_; ++j) {
    int row = 0;
    for (int e = 0; e < 3; ++e) {
      const RefEdge& edge = ref_edges()[e];
      for (int m = 0; m < n_edge_moments_; ++m, ++row) {
        double s = 0.0;
        for (int g = 0; g < er.size(); ++g) {
          const double tau = er.points[g];
          const Vec2 x = edge.a + tau * (edge.b - edge.a);
          s += er.weights[g] * prime_[j].eval(x).dot(edge.normal) *
               legendre01(m, tau);
        }
        V(row, j) = s * edge.length;
      }
    }
    for (const auto& rho : interior_test_) {
      double s = 0.0;
      for (int g = 0; g < tr.size(); ++g)
        s += tr.weights[g] * prime_[j].eval(tr.points[g]).dot(rho.eval(tr.points[g]));
      V(row++, j) = s;
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(V);
  vandermonde_cond_ =
      svd.singularValues()(0) / svd.singularValues()(dim_ - 1);

  coeff_ = V.fullPivLu().solve(Eigen::MatrixXd::Identity(dim_, dim_));
}

void ReferenceElement::build_dg() {
  const int d = family_.degree;
  const auto exps = monomials(d);
  const int np = static_cast<int>(exps.size());

  // Gram-Schmidt over graded monomials without normalisation, so the
  // leading mode stays psi_0 = 1 and cell means are plain coefficients.
  scalar_basis_.clear();
  scalar_norms_.resize(np);
  for (int j = 0; j < np; ++j) {
    Poly2 psi = Poly2::monomial(exps[j].first, exps[j].second);
    for (int i = 0; i < j; ++i) {
      Poly2 prod;
      for (const auto& t : scalar_basis_[i].terms())
        prod += t.c * Poly2::monomial(exps[j].first + t.ax, exps[j].second + t.ay);
      const double proj = prod.integral_ref() / scalar_norms_(i);
      psi += -proj * scalar_basis_[i];
    }
    Poly2 sq;
    for (const auto& s : psi.terms())
      for (const auto& t : psi.terms())
        sq += (s.c * t.c) * Poly2::monomial(s.ax + t.ax, s.ay + t.ay);
    scalar_norms_(j) = sq.integral_ref();
    scalar_basis_.push_back(psi);
  }

  dim_ = family_.kind == FamilyKind::DGScalar ? np : 2 * np;
  n_edge_moments_ = 0;
}

Eigen::MatrixXd ReferenceElement::eval_vector(const Vec2& p) const {
  if (family_.kind == FamilyKind::DGVector) {
    const int np = dim_ / 2;
    Eigen::MatrixXd vals = Eigen::MatrixXd::Zero(dim_, 2);
    for (int i = 0; i < np; ++i) {
      const double s = scalar_basis_[i].eval(p);
      vals(2 * i, 0) = s;
      vals(2 * i + 1, 1) = s;
    }
    return vals;
  }
  if (!family_.hdiv())
    throw std::logic_error("eval_vector on a scalar family");
  Eigen::MatrixXd pv(dim_, 2);
  for (int m = 0; m < dim_; ++m) {
    const Vec2 v = prime_[m].eval(p);
    pv(m, 0) = v.x();
    pv(m, 1) = v.y();
  }
  return coeff_.transpose() * pv;
}

Eigen::VectorXd ReferenceElement::eval_div(const Vec2& p) const {
  if (!family_.hdiv()) throw std::logic_error("eval_div on a DG family");
  Eigen::VectorXd pd(dim_);
  for (int m = 0; m < dim_; ++m) pd(m) = prime_div_[m].eval(p);
  return coeff_.transpose() * pd;
}

Eigen::VectorXd ReferenceElement::eval_scalar(const Vec2& p) const {
  if (family_.kind != FamilyKind::DGScalar)
    throw std::logic_error("eval_scalar on a vector family");
  Eigen::VectorXd v(dim_);
  for (int i = 0; i < dim_; ++i) v(i) = scalar_basis_[i].eval(p);
  return v;
}

Eigen::MatrixXd ReferenceElement::eval_grad(const Vec2& p) const {
  if (family_.kind != FamilyKind::DGScalar)
    throw std::logic_error("eval_grad on a vector family");
  Eigen::MatrixXd g(dim_, 2);
  for (int i = 0; i < dim_; ++i) {
    g(i, 0) = scalar_basis_[i].dx().eval(p);
    g(i, 1) = scalar_basis_[i].dy().eval(p);
  }
  return g;
}

const Eigen::VectorXd& ReferenceElement::scalar_norms() const {
  if (family_.hdiv()) throw std::logic_error("scalar_norms on an H(div) family");
  return scalar_norms_;
}

Eigen::VectorXd ReferenceElement::dofs_of(
    const std::function<Vec2(const Vec2&)>& v) const {
  if (!family_.hdiv()) throw std::logic_error("dofs_of on a DG family");
  Eigen::VectorXd dofs(dim_);
  const EdgeRule er = edge_rule(8);
  int row = 0;
  for (int e = 0; e < 3; ++e) {
    const RefEdge& edge = ref_edges()[e];
    for (int m = 0; m < n_edge_moments_; ++m, ++row) {
      double s = 0.0;
      for (int g = 0; g < er.size(); ++g) {
        const double tau = er.points[g];
        const Vec2 x = edge.a + tau * (edge.b - edge.a);
        s += er.weights[g] * v(x).dot(edge.normal) * legendre01(m, tau);
      }
      dofs(row) = s * edge.length;
    }
  }
  dofs.tail(n_interior()) = interior_dofs_of(v);
  return dofs;
}

Eigen::VectorXd ReferenceElement::interior_dofs_of(
    const std::function<Vec2(const Vec2&)>& v) const {
  if (!family_.hdiv()) throw std::logic_error("interior_dofs_of on a DG family");
  Eigen::VectorXd dofs = Eigen::VectorXd::Zero(n_interior());
  if (n_interior() == 0) return dofs;
  const QuadratureRule tr = triangle_rule(12);
  for (int g = 0; g < tr.size(); ++g) {
    const Vec2 val = v(tr.points[g]);
    for (int i = 0; i < n_interior(); ++i)
      dofs(i) += tr.weights[g] * val.dot(interior_test_[i].eval(tr.points[g]));
  }
  return dofs;
}

}  // namespace metawave
