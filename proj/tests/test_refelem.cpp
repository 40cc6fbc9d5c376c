#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "metawave/quadrature.hpp"
#include "metawave/refelem.hpp"

using namespace metawave;

namespace {

std::vector<ElementFamily> hdiv_families() {
  return {ElementFamily::rtn(0), ElementFamily::rtn(1), ElementFamily::bdm(1),
          ElementFamily::bdm(2)};
}

Vec2 random_interior_point(std::mt19937& gen) {
  std::uniform_real_distribution<double> dist(0.05, 0.95);
  double x = dist(gen), y = dist(gen);
  if (x + y > 0.95) {  // fold back into the triangle
    x = 0.95 - x;
    y = 0.95 - y;
  }
  return Vec2(x, y);
}

}  // namespace

TEST_CASE("space dimensions") {
  CHECK(ReferenceElement(ElementFamily::rtn(0)).dim() == 3);
  CHECK(ReferenceElement(ElementFamily::rtn(1)).dim() == 8);
  CHECK(ReferenceElement(ElementFamily::bdm(1)).dim() == 6);
  CHECK(ReferenceElement(ElementFamily::bdm(2)).dim() == 12);
  CHECK(ReferenceElement(ElementFamily::dg_scalar(0)).dim() == 1);
  CHECK(ReferenceElement(ElementFamily::dg_scalar(1)).dim() == 3);
  CHECK(ReferenceElement(ElementFamily::dg_scalar(2)).dim() == 6);
  CHECK(ReferenceElement(ElementFamily::dg_scalar(3)).dim() == 10);
  CHECK(ReferenceElement(ElementFamily::dg_vector(1)).dim() == 6);
  CHECK(ReferenceElement(ElementFamily::dg_vector(2)).dim() == 12);
}

TEST_CASE("edge moment counts") {
  CHECK(ReferenceElement(ElementFamily::rtn(0)).edge_moments() == 1);
  CHECK(ReferenceElement(ElementFamily::rtn(1)).edge_moments() == 2);
  CHECK(ReferenceElement(ElementFamily::bdm(1)).edge_moments() == 2);
  CHECK(ReferenceElement(ElementFamily::bdm(2)).edge_moments() == 3);
  CHECK(ReferenceElement(ElementFamily::rtn(1)).n_interior() == 2);
  CHECK(ReferenceElement(ElementFamily::bdm(2)).n_interior() == 3);
}

TEST_CASE("H(div) nodal bases satisfy the Kronecker DOF property") {
  for (const auto& fam : hdiv_families()) {
    const ReferenceElement ref(fam);
    for (int j = 0; j < ref.dim(); ++j) {
      auto basis_j = [&](const Vec2& p) {
        return Vec2(ref.eval_vector(p)(j, 0), ref.eval_vector(p)(j, 1));
      };
      const Eigen::VectorXd dofs = ref.dofs_of(basis_j);
      for (int i = 0; i < ref.dim(); ++i)
        CHECK(dofs(i) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-11));
    }
  }
}

TEST_CASE("Vandermonde conditioning stays moderate") {
  for (const auto& fam : hdiv_families()) {
    const ReferenceElement ref(fam);
    CHECK(ref.vandermonde_condition() < 1e4);
  }
}

TEST_CASE("divergence matches a finite-difference check") {
  std::mt19937 gen(42);
  const double eps = 1e-6;
  for (const auto& fam : hdiv_families()) {
    const ReferenceElement ref(fam);
    for (int trial = 0; trial < 4; ++trial) {
      const Vec2 p = random_interior_point(gen);
      const Eigen::VectorXd div = ref.eval_div(p);
      const Eigen::MatrixXd xp = ref.eval_vector(Vec2(p.x() + eps, p.y()));
      const Eigen::MatrixXd xm = ref.eval_vector(Vec2(p.x() - eps, p.y()));
      const Eigen::MatrixXd yp = ref.eval_vector(Vec2(p.x(), p.y() + eps));
      const Eigen::MatrixXd ym = ref.eval_vector(Vec2(p.x(), p.y() - eps));
      for (int j = 0; j < ref.dim(); ++j) {
        const double fd = (xp(j, 0) - xm(j, 0)) / (2 * eps) +
                          (yp(j, 1) - ym(j, 1)) / (2 * eps);
        CHECK(div(j) == doctest::Approx(fd).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("interpolation reproduces polynomial members of the space") {
  std::mt19937 gen(7);
  for (const auto& fam : hdiv_families()) {
    const ReferenceElement ref(fam);
    // A full-degree polynomial field contained in every tested space:
    // constants for RTN0, P1 for RTN1/BDM1, P2 for BDM2.
    const int deg = (fam.kind == FamilyKind::BDM) ? fam.degree : fam.degree;
    auto field = [deg](const Vec2& p) -> Vec2 {
      double vx = 1.0 + 0.5 * 0, vy = -2.0;
      if (deg >= 1) {
        vx += 2.0 * p.x() - 0.75 * p.y();
        vy += -1.5 * p.x() + 0.25 * p.y();
      }
      if (deg >= 2) {
        vx += 0.3 * p.x() * p.x() - 0.7 * p.x() * p.y();
        vy += 0.9 * p.y() * p.y() + 0.4 * p.x() * p.y();
      }
      return Vec2(vx, vy);
    };
    const Eigen::VectorXd dofs = ref.dofs_of(field);
    for (int trial = 0; trial < 5; ++trial) {
      const Vec2 p = random_interior_point(gen);
      const Eigen::MatrixXd vals = ref.eval_vector(p);
      const Vec2 interp(dofs.dot(vals.col(0)), dofs.dot(vals.col(1)));
      const Vec2 exact = field(p);
      CHECK(interp.x() == doctest::Approx(exact.x()).epsilon(1e-10));
      CHECK(interp.y() == doctest::Approx(exact.y()).epsilon(1e-10));
    }
  }
}

TEST_CASE("edge DOFs of the constant field match Legendre moments") {
  // For v = n_e on edge e, the m = 0 moment is |e| and higher moments vanish.
  const ReferenceElement ref(ElementFamily::bdm(2));
  const auto& edges = ref_edges();
  for (int e = 0; e < 3; ++e) {
    const Vec2 n = edges[e].normal;
    auto field = [n](const Vec2&) { return n; };
    const Eigen::VectorXd dofs = ref.dofs_of(field);
    CHECK(dofs(3 * e + 0) == doctest::Approx(edges[e].length).epsilon(1e-12));
    CHECK(dofs(3 * e + 1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(dofs(3 * e + 2) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("DG modal basis starts with the constant and is orthogonal") {
  std::mt19937 gen(3);
  for (int d = 0; d <= 3; ++d) {
    const ReferenceElement ref(ElementFamily::dg_scalar(d));
    for (int trial = 0; trial < 3; ++trial) {
      const Vec2 p = random_interior_point(gen);
      CHECK(ref.eval_scalar(p)(0) == doctest::Approx(1.0).epsilon(1e-13));
    }
    const QuadratureRule rule = triangle_rule(2 * d + 1);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(ref.dim(), ref.dim());
    for (int g = 0; g < rule.size(); ++g) {
      const Eigen::VectorXd psi = ref.eval_scalar(rule.points[g]);
      gram += rule.weights[g] * psi * psi.transpose();
    }
    const Eigen::VectorXd& norms = ref.scalar_norms();
    REQUIRE(norms.size() == ref.dim());
    for (int i = 0; i < ref.dim(); ++i) {
      for (int j = 0; j < ref.dim(); ++j) {
        const double exact = (i == j) ? norms(i) : 0.0;
        CHECK(gram(i, j) == doctest::Approx(exact).epsilon(1e-12));
      }
    }
  }
  // P0: single mode, reference norm 1/2 (the triangle area).
  const ReferenceElement p0(ElementFamily::dg_scalar(0));
  CHECK(p0.scalar_norms()(0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("DG gradient matches a finite-difference check") {
  std::mt19937 gen(11);
  const ReferenceElement ref(ElementFamily::dg_scalar(3));
  const double eps = 1e-6;
  for (int trial = 0; trial < 3; ++trial) {
    const Vec2 p = random_interior_point(gen);
    const Eigen::MatrixXd grad = ref.eval_grad(p);
    const Eigen::VectorXd xp = ref.eval_scalar(Vec2(p.x() + eps, p.y()));
    const Eigen::VectorXd xm = ref.eval_scalar(Vec2(p.x() - eps, p.y()));
    const Eigen::VectorXd yp = ref.eval_scalar(Vec2(p.x(), p.y() + eps));
    const Eigen::VectorXd ym = ref.eval_scalar(Vec2(p.x(), p.y() - eps));
    for (int j = 0; j < ref.dim(); ++j) {
      CHECK(grad(j, 0) == doctest::Approx((xp(j) - xm(j)) / (2 * eps)).epsilon(1e-5));
      CHECK(grad(j, 1) == doctest::Approx((yp(j) - ym(j)) / (2 * eps)).epsilon(1e-5));
    }
  }
}

TEST_CASE("vector DG basis interleaves components") {
  const ReferenceElement ref(ElementFamily::dg_vector(1));
  const Vec2 p(0.3, 0.4);
  const Eigen::MatrixXd vals = ref.eval_vector(p);
  REQUIRE(vals.rows() == 6);
  // Mode 0 is the constant: basis 0 = (1, 0), basis 1 = (0, 1).
  CHECK(vals(0, 0) == doctest::Approx(1.0));
  CHECK(vals(0, 1) == doctest::Approx(0.0));
  CHECK(vals(1, 0) == doctest::Approx(0.0));
  CHECK(vals(1, 1) == doctest::Approx(1.0));
  // Higher modes keep the same component split.
  for (int i = 1; i < 3; ++i) {
    CHECK(vals(2 * i, 1) == doctest::Approx(0.0));
    CHECK(vals(2 * i + 1, 0) == doctest::Approx(0.0));
    CHECK(vals(2 * i, 0) == doctest::Approx(vals(2 * i + 1, 1)).epsilon(1e-13));
  }
}

TEST_CASE("family constructors reject invalid degrees") {
  CHECK_THROWS_AS(ElementFamily::rtn(-1), std::invalid_argument);
  CHECK_THROWS_AS(ElementFamily::bdm(0), std::invalid_argument);
  CHECK_THROWS_AS(ElementFamily::dg_scalar(-2), std::invalid_argument);
}

TEST_CASE("reference edges are counter-clockwise with outward normals") {
  const auto& edges = ref_edges();
  // Midpoint + small step along the outward normal leaves the triangle.
  for (const RefEdge& e : edges) {
    const Vec2 mid = 0.5 * (e.a + e.b);
    const Vec2 out = mid + 1e-3 * e.normal;
    const bool inside =
        out.x() >= 0.0 && out.y() >= 0.0 && out.x() + out.y() <= 1.0;
    CHECK(!inside);
    CHECK(e.normal.norm() == doctest::Approx(1.0).epsilon(1e-14));
    // Normal is the ccw tangent rotated clockwise.
    const Vec2 t = (e.b - e.a).normalized();
    CHECK(e.normal.x() == doctest::Approx(t.y()).epsilon(1e-14));
    CHECK(e.normal.y() == doctest::Approx(-t.x()).epsilon(1e-14));
  }
}
