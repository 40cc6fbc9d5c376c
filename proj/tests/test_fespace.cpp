#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "metawave/fespace.hpp"
#include "metawave/quadrature.hpp"

using namespace metawave;

namespace {

std::shared_ptr<Mesh> unit_mesh(int n) {
  return std::make_shared<Mesh>(build_structured(Rect{0, 0, 1, 1}, n));
}

const std::vector<Pairing> kPairings = {Pairing::BDM1, Pairing::RTN0,
                                        Pairing::BDM2, Pairing::RTN1};

}  // namespace

TEST_CASE("pairing metadata") {
  CHECK(pairing_k(Pairing::BDM1) == 0);
  CHECK(pairing_k(Pairing::RTN0) == 0);
  CHECK(pairing_k(Pairing::BDM2) == 1);
  CHECK(pairing_k(Pairing::RTN1) == 1);
  CHECK(pairing_delta(Pairing::BDM1) == 1);
  CHECK(pairing_delta(Pairing::RTN0) == 0);
  CHECK(pairing_from_name("bdm2") == Pairing::BDM2);
  CHECK(pairing_from_name(pairing_name(Pairing::RTN1)) == Pairing::RTN1);
  CHECK_THROWS_AS(pairing_from_name("p2-p1"), std::invalid_argument);
}

TEST_CASE("global DOF counts on the n = 4 unit mesh") {
  auto mesh = unit_mesh(4);  // 56 edges, 32 cells
  CHECK(FESpace(*mesh, ElementFamily::bdm(1)).n_dofs() == 112);
  CHECK(FESpace(*mesh, ElementFamily::rtn(0)).n_dofs() == 56);
  CHECK(FESpace(*mesh, ElementFamily::rtn(1)).n_dofs() == 176);
  CHECK(FESpace(*mesh, ElementFamily::bdm(2)).n_dofs() == 264);
  CHECK(FESpace(*mesh, ElementFamily::dg_scalar(0)).n_dofs() == 32);
  CHECK(FESpace(*mesh, ElementFamily::dg_scalar(1)).n_dofs() == 96);
  CHECK(FESpace(*mesh, ElementFamily::dg_vector(1)).n_dofs() == 192);
  CHECK(FESpace(*mesh, ElementFamily::dg_vector(2)).n_dofs() == 384);
}

TEST_CASE("SpaceSet assembles the advertised component spaces") {
  auto mesh = unit_mesh(2);
  for (Pairing pr : kPairings) {
    const SpaceSet s = SpaceSet::make(mesh, pr);
    const int k = pairing_k(pr);
    CHECK(s.V->family().hdiv());
    CHECK(s.Q->family().kind == FamilyKind::DGScalar);
    CHECK(s.Q->family().degree == k);
    CHECK(s.W->family().kind == FamilyKind::DGVector);
    CHECK(s.W->family().degree == k + pairing_delta(pr));
    CHECK(s.Qstar->family().degree == k + 2);
  }
}

TEST_CASE("cell DOF table is consistent with the edge numbering") {
  auto mesh = unit_mesh(3);
  for (Pairing pr : kPairings) {
    const FESpace V(*mesh, velocity_family(pr));
    const int ne = V.ref().edge_moments();
    for (int c = 0; c < mesh->n_cells(); ++c) {
      for (int le = 0; le < 3; ++le) {
        const int edge = mesh->cell_edges[c][le];
        const bool aligned = mesh->cell_edge_aligned[c][le] > 0;
        for (int m = 0; m < ne; ++m) {
          const auto d = V.cell_dof(c, ne * le + m);
          CHECK(d.index == V.edge_dof(edge, m));
          const double expect =
              aligned ? 1.0 : ((m % 2 == 0) ? -1.0 : 1.0);
          CHECK(d.sign == expect);
        }
      }
      for (int l = 3 * ne; l < V.n_local(); ++l)
        CHECK(V.cell_dof(c, l).sign == 1.0);
    }
  }
}

TEST_CASE("normal traces are continuous across interior edges") {
  auto mesh = unit_mesh(3);
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (Pairing pr : kPairings) {
    const FESpace V(*mesh, velocity_family(pr));
    FEFunction f{&V, Eigen::VectorXd(V.n_dofs())};
    for (int i = 0; i < V.n_dofs(); ++i) f.coeffs(i) = dist(gen);
    for (int e = 0; e < mesh->n_edges(); ++e) {
      if (mesh->is_boundary_edge(e)) continue;
      const Vec2 a = mesh->vertices[mesh->edges[e][0]];
      const Vec2 b = mesh->vertices[mesh->edges[e][1]];
      const Vec2 n = mesh->edge_normal(e);
      for (double s : {0.21, 0.53, 0.88}) {
        const Vec2 x = a + s * (b - a);
        const double t0 = eval_vector(f, mesh->edge_cells[e][0], x).dot(n);
        const double t1 = eval_vector(f, mesh->edge_cells[e][1], x).dot(n);
        CHECK(t0 == doctest::Approx(t1).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("interpolation reproduces polynomial fields in the space") {
  auto mesh = unit_mesh(3);
  std::mt19937 gen(17);
  std::uniform_real_distribution<double> dist(0.01, 0.99);
  for (Pairing pr : kPairings) {
    const FESpace V(*mesh, velocity_family(pr));
    const int deg = (pr == Pairing::RTN0) ? 0 : (pr == Pairing::BDM2 ? 2 : 1);
    auto field = [deg](const Vec2& p) -> Vec2 {
      double vx = 0.7, vy = -1.1;
      if (deg >= 1) {
        vx += 1.3 * p.x() - 0.2 * p.y();
        vy += 0.8 * p.x() + 2.0 * p.y();
      }
      if (deg >= 2) {
        vx += 0.5 * p.x() * p.y() - 0.3 * p.y() * p.y();
        vy += 0.4 * p.x() * p.x() + 0.6 * p.x() * p.y();
      }
      return Vec2(vx, vy);
    };
    FEFunction f{&V, V.interpolate(field)};
    for (int trial = 0; trial < 20; ++trial) {
      const Vec2 x(dist(gen), dist(gen));
      const int c = mesh->find_cell(x);
      REQUIRE(c >= 0);
      const Vec2 got = eval_vector(f, c, x);
      const Vec2 want = field(x);
      CHECK(got.x() == doctest::Approx(want.x()).epsilon(1e-10));
      CHECK(got.y() == doctest::Approx(want.y()).epsilon(1e-10));
    }
  }
}

TEST_CASE("interpolation commutes with the divergence projection") {
  auto mesh = unit_mesh(4);
  // Polynomial case (quadrature-exact end to end) and a smooth
  // transcendental case.
  auto poly = [](const Vec2& p) -> Vec2 {
    return Vec2(p.x() * p.x() * p.y() - 2.0 * p.y() * p.y(),
                p.x() * p.y() * p.y() + 0.5 * p.x() * p.x());
  };
  auto poly_div = [](const Vec2& p) {
    return 2.0 * p.x() * p.y() + 2.0 * p.x() * p.y();
  };
  auto smooth = [](const Vec2& p) -> Vec2 {
    return Vec2(std::sin(p.x() + 2.0 * p.y()), std::cos(p.x() - p.y()));
  };
  auto smooth_div = [](const Vec2& p) {
    return std::cos(p.x() + 2.0 * p.y()) + std::sin(p.x() - p.y());
  };
  for (Pairing pr : kPairings) {
    const SpaceSet s = SpaceSet::make(mesh, pr);
    for (int which = 0; which < 2; ++which) {
      const auto& field = which == 0 ? poly : smooth;
      const auto& field_div = which == 0 ? poly_div : smooth_div;
      FEFunction vh{s.V.get(), s.V->interpolate(field)};
      FEFunction dh{s.Q.get(), s.Q->project(field_div)};
      const double tol = which == 0 ? 1e-11 : 1e-9;
      for (int c = 0; c < mesh->n_cells(); c += 7) {
        for (const Vec2 ref : {Vec2(0.2, 0.3), Vec2(0.6, 0.1)}) {
          const Vec2 x = mesh->cell_geometry(c).map(ref);
          CHECK(eval_div(vh, c, x) ==
                doctest::Approx(eval_scalar(dh, c, x)).epsilon(tol));
        }
      }
    }
  }
}

TEST_CASE("cell-wise projection reproduces polynomials of space degree") {
  auto mesh = unit_mesh(3);
  const FESpace Q1(*mesh, ElementFamily::dg_scalar(1));
  auto lin = [](const Vec2& p) { return 2.0 - 3.0 * p.x() + 5.0 * p.y(); };
  FEFunction f{&Q1, Q1.project(lin)};
  for (const Vec2 x : {Vec2(0.1, 0.2), Vec2(0.77, 0.15), Vec2(0.4, 0.9)}) {
    const int c = mesh->find_cell(x);
    CHECK(eval_scalar(f, c, x) == doctest::Approx(lin(x)).epsilon(1e-12));
  }

  const FESpace W(*mesh, ElementFamily::dg_vector(1));
  auto vlin = [](const Vec2& p) -> Vec2 {
    return Vec2(1.0 + p.x(), p.x() - 2.0 * p.y());
  };
  FEFunction g{&W, W.project_vector(vlin)};
  for (const Vec2 x : {Vec2(0.3, 0.6), Vec2(0.9, 0.8)}) {
    const int c = mesh->find_cell(x);
    const Vec2 got = eval_vector(g, c, x);
    CHECK(got.x() == doctest::Approx(vlin(x).x()).epsilon(1e-12));
    CHECK(got.y() == doctest::Approx(vlin(x).y()).epsilon(1e-12));
  }
}

TEST_CASE("P0 projection yields cell means") {
  auto mesh = unit_mesh(2);
  const FESpace Q0(*mesh, ElementFamily::dg_scalar(0));
  const Eigen::VectorXd coeffs = Q0.project([](const Vec2& p) { return p.x(); });
  for (int c = 0; c < mesh->n_cells(); ++c) {
    // Mean of x over a triangle is the centroid abscissa.
    const auto d = Q0.cell_dof(c, 0);
    CHECK(coeffs(d.index) == doctest::Approx(mesh->centroid(c).x()).epsilon(1e-13));
  }
}
