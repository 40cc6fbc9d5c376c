#include "metawave/fespace.hpp"

#include <stdexcept>

#include "metawave/quadrature.hpp"

namespace metawave {

int pairing_k(Pairing p) {
  switch (p) {
    case Pairing::BDM1:
    case Pairing::RTN0:
      return 0;
    case Pairing::BDM2:
    case Pairing::RTN1:
      return 1;
  }
  return 0;
}

int pairing_delta(Pairing p) {
  return (p == Pairing::BDM1 || p == Pairing::BDM2) ? 1 : 0;
}

ElementFamily velocity_family(Pairing p) {
  const int k = pairing_k(p);
  return pairing_delta(p) == 1 ? ElementFamily::bdm(k + 1)
                               : ElementFamily::rtn(k);
}

std::string pairing_name(Pairing p) {
  switch (p) {
    case Pairing::BDM1:
      return "bdm1";
    case Pairing::RTN0:
      return "rtn0";
    case Pairing::BDM2:
      return "bdm2";
    case Pairing::RTN1:
      return "rtn1";
  }
  return "?";
}

Pairing pairing_from_name(const std::string& name) {
  if (name == "bdm1") return Pairing::BDM1;
  if (name == "rtn0") return Pairing::RTN0;
  if (name == "bdm2") return Pairing::BDM2;
  if (name == "rtn1") return Pairing::RTN1;
  throw std::invalid_argument("unknown pairing: " + name +
                              " (expected bdm1|rtn0|bdm2|rtn1)");
}

FESpace::FESpace(const Mesh& mesh, const ElementFamily& family)
    : mesh_(&mesh), ref_(family) {
  if (hdiv()) {
    const int ne = ref_.edge_moments();
    interior_offset_ = mesh.n_edges() * ne;
    n_dofs_ = interior_offset_ + mesh.n_cells() * ref_.n_interior();
  } else {
    n_dofs_ = mesh.n_cells() * ref_.dim();
  }
}

FESpace::LocalDof FESpace::cell_dof(int cell, int local) const {
  if (!hdiv()) return {cell * ref_.dim() + local, 1.0};
  const int ne = ref_.edge_moments();
  if (local < 3 * ne) {
    const int le = local / ne;
    const int m = local % ne;
    const int edge = mesh_->cell_edges[cell][le];
    const bool aligned = mesh_->cell_edge_aligned[cell][le] > 0;
    const double sign = aligned ? 1.0 : ((m % 2 == 0) ? -1.0 : 1.0);
    return {edge * ne + m, sign};
  }
  return {interior_offset_ + cell * ref_.n_interior() + (local - 3 * ne), 1.0};
}

int FESpace::edge_dof(int edge, int moment) const {
  if (!hdiv()) throw std::logic_error("edge_dof on a DG space");
  return edge * ref_.edge_moments() + moment;
}

Eigen::VectorXd FESpace::interpolate(
    const std::function<Vec2(const Vec2&)>& v) const {
  if (!hdiv()) throw std::logic_error("interpolate needs an H(div) space");
  Eigen::VectorXd dofs(n_dofs_);
  const int ne = ref_.edge_moments();
  const EdgeRule er = edge_rule(8);

  for (int e = 0; e < mesh_->n_edges(); ++e) {
    const Vec2 a = mesh_->vertices[mesh_->edges[e][0]];
    const Vec2 b = mesh_->vertices[mesh_->edges[e][1]];
    const Vec2 n = mesh_->edge_normal(e);
    const double len = mesh_->edge_length(e);
    for (int m = 0; m < ne; ++m) {
      double s = 0.0;
      for (int g = 0; g < er.size(); ++g) {
        const double tau = er.points[g];
        s += er.weights[g] * v(a + tau * (b - a)).dot(n) * legendre01(m, tau);
      }
      dofs(edge_dof(e, m)) = s * len;
    }
  }

  const int ni = ref_.n_interior();
  for (int c = 0; c < mesh_->n_cells(); ++c) {
    if (ni == 0) break;
    const CellGeometry g = mesh_->cell_geometry(c);
    // Contravariant pull-back: vhat = detJ J^{-1} v(F(xhat)).
    auto vhat = [&](const Vec2& xhat) -> Vec2 {
      return g.detJ * (g.Jinv * v(g.map(xhat)));
    };
    dofs.segment(interior_offset_ + c * ni, ni) = ref_.interior_dofs_of(vhat);
  }
  return dofs;
}

Eigen::VectorXd FESpace::project(
    const std::function<double(const Vec2&)>& f) const {
  if (family().kind != FamilyKind::DGScalar)
    throw std::logic_error("project needs a scalar DG space");
  const QuadratureRule tr = triangle_rule(12);
  const int nl = ref_.dim();
  Eigen::MatrixXd psi(nl, tr.size());
  for (int gq = 0; gq < tr.size(); ++gq)
    psi.col(gq) = ref_.eval_scalar(tr.points[gq]);

  Eigen::VectorXd dofs(n_dofs_);
  for (int c = 0; c < mesh_->n_cells(); ++c) {
    const CellGeometry g = mesh_->cell_geometry(c);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(nl);
    for (int gq = 0; gq < tr.size(); ++gq)
      b += tr.weights[gq] * f(g.map(tr.points[gq])) * psi.col(gq);
    // Orthogonal modal basis: local mass is detJ * diag(norms); the detJ
    // cancels against the load's detJ.
    dofs.segment(c * nl, nl) = b.cwiseQuotient(ref_.scalar_norms());
  }
  return dofs;
}

Eigen::VectorXd FESpace::project_vector(
    const std::function<Vec2(const Vec2&)>& f) const {
  if (family().kind != FamilyKind::DGVector)
    throw std::logic_error("project_vector needs a vector DG space");
  const QuadratureRule tr = triangle_rule(12);
  const int nl = ref_.dim();
  const int np = nl / 2;
  Eigen::MatrixXd psi(np, tr.size());
  for (int gq = 0; gq < tr.size(); ++gq) {
    const Eigen::MatrixXd vals = ref_.eval_vector(tr.points[gq]);
    for (int i = 0; i < np; ++i) psi(i, gq) = vals(2 * i, 0);
  }

  Eigen::VectorXd dofs(n_dofs_);
  for (int c = 0; c < mesh_->n_cells(); ++c) {
    const CellGeometry g = mesh_->cell_geometry(c);
    Eigen::VectorXd bx = Eigen::VectorXd::Zero(np), by = bx;
    for (int gq = 0; gq < tr.size(); ++gq) {
      const Vec2 val = f(g.map(tr.points[gq]));
      bx += tr.weights[gq] * val.x() * psi.col(gq);
      by += tr.weights[gq] * val.y() * psi.col(gq);
    }
    for (int i = 0; i < np; ++i) {
      dofs(c * nl + 2 * i) = bx(i) / ref_.scalar_norms()(i);
      dofs(c * nl + 2 * i + 1) = by(i) / ref_.scalar_norms()(i);
    }
  }
  return dofs;
}

namespace {

Eigen::VectorXd local_coeffs(const FEFunction& f, int cell) {
  const FESpace& sp = *f.space;
  Eigen::VectorXd loc(sp.n_local());
  for (int l = 0; l < sp.n_local(); ++l) {
    const auto d = sp.cell_dof(cell, l);
    loc(l) = d.sign * f.coeffs(d.index);
  }
  return loc;
}

}  // namespace

Vec2 eval_vector(const FEFunction& f, int cell, const Vec2& x) {
  const FESpace& sp = *f.space;
  const CellGeometry g = sp.mesh().cell_geometry(cell);
  const Vec2 xhat = g.pull_back(x);
  const Eigen::MatrixXd vals = sp.ref().eval_vector(xhat);
  const Eigen::VectorXd loc = local_coeffs(f, cell);
  const Eigen::RowVector2d ref_val = loc.transpose() * vals;
  if (sp.hdiv()) return g.piola(ref_val.transpose());
  return ref_val.transpose();
}

double eval_scalar(const FEFunction& f, int cell, const Vec2& x) {
  const FESpace& sp = *f.space;
  const Vec2 xhat = sp.mesh().cell_geometry(cell).pull_back(x);
  return local_coeffs(f, cell).dot(sp.ref().eval_scalar(xhat));
}

double eval_div(const FEFunction& f, int cell, const Vec2& x) {
  const FESpace& sp = *f.space;
  const CellGeometry g = sp.mesh().cell_geometry(cell);
  const Vec2 xhat = g.pull_back(x);
  return local_coeffs(f, cell).dot(sp.ref().eval_div(xhat)) / g.detJ;
}

SpaceSet SpaceSet::make(std::shared_ptr<const Mesh> mesh, Pairing pairing) {
  const int k = pairing_k(pairing);
  const int delta = pairing_delta(pairing);
  SpaceSet s;
  s.mesh = std::move(mesh);
  s.pairing = pairing;
  s.V = std::make_unique<FESpace>(*s.mesh, velocity_family(pairing));
  s.Q = std::make_unique<FESpace>(*s.mesh, ElementFamily::dg_scalar(k));
  s.W = std::make_unique<FESpace>(*s.mesh, ElementFamily::dg_vector(k + delta));
  s.Qstar = std::make_unique<FESpace>(*s.mesh, ElementFamily::dg_scalar(k + 2));
  return s;
}

}  // namespace metawave
