#include "metawave/assembly.hpp"

#include <stdexcept>

#include "metawave/runtime.hpp"

namespace metawave {

namespace {

// One rule covers every bilinear form of the supported pairings (largest
// integrand: P3 x P3 mass, degree 6).
constexpr int kAssemblyDegree = 8;
constexpr int kEdgePoints = 8;

using Triplets = std::vector<Eigen::Triplet<double>>;

SpMat from_triplets(int rows, int cols, Triplets& trip) {
  SpMat A(rows, cols);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  return A;
}

}  // namespace

HdivTab tabulate_hdiv(const ReferenceElement& ref, const QuadratureRule& rule) {
  const int dim = ref.dim();
  HdivTab tab;
  tab.vx.resize(dim, rule.size());
  tab.vy.resize(dim, rule.size());
  tab.div.resize(dim, rule.size());
  for (int g = 0; g < rule.size(); ++g) {
    const Eigen::MatrixXd vals = ref.eval_vector(rule.points[g]);
    tab.vx.col(g) = vals.col(0);
    tab.vy.col(g) = vals.col(1);
    tab.div.col(g) = ref.eval_div(rule.points[g]);
  }
  return tab;
}

ScalarTab tabulate_scalar(const ReferenceElement& ref,
                          const QuadratureRule& rule) {
  const int dim = ref.dim();
  ScalarTab tab;
  tab.val.resize(dim, rule.size());
  tab.gx.resize(dim, rule.size());
  tab.gy.resize(dim, rule.size());
  for (int g = 0; g < rule.size(); ++g) {
    tab.val.col(g) = ref.eval_scalar(rule.points[g]);
    const Eigen::MatrixXd grad = ref.eval_grad(rule.points[g]);
    tab.gx.col(g) = grad.col(0);
    tab.gy.col(g) = grad.col(1);
  }
  return tab;
}

Eigen::MatrixXd tabulate_dgvec_modes(const ReferenceElement& ref,
                                     const QuadratureRule& rule) {
  const int np = ref.dim() / 2;
  Eigen::MatrixXd modes(np, rule.size());
  for (int g = 0; g < rule.size(); ++g) {
    const Eigen::MatrixXd vals = ref.eval_vector(rule.points[g]);
    for (int i = 0; i < np; ++i) modes(i, g) = vals(2 * i, 0);
  }
  return modes;
}

SpMat assemble_mass(const FESpace& space, const Eigen::VectorXd& cell_weight) {
  const Mesh& mesh = space.mesh();
  if (cell_weight.size() != mesh.n_cells())
    throw std::invalid_argument("assemble_mass: weight size != cell count");
  Triplets trip;

  if (space.hdiv()) {
    const QuadratureRule rule = triangle_rule(kAssemblyDegree);
    const HdivTab tab = tabulate_hdiv(space.ref(), rule);
    const Eigen::VectorXd W =
        Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), rule.size());
    // Geometry-independent blocks: M_loc combines them through J^T J.
    const Eigen::MatrixXd Axx = tab.vx * W.asDiagonal() * tab.vx.transpose();
    const Eigen::MatrixXd Axy = tab.vx * W.asDiagonal() * tab.vy.transpose();
    const Eigen::MatrixXd Ayy = tab.vy * W.asDiagonal() * tab.vy.transpose();

    const int nl = space.n_local();
    std::vector<Eigen::MatrixXd> local(mesh.n_cells());
    parallel_for(mesh.n_cells(), [&](int c) {
      const CellGeometry g = mesh.cell_geometry(c);
      const Mat2 G = g.J.transpose() * g.J;
      local[c] = (cell_weight(c) / g.detJ) *
                 (G(0, 0) * Axx + G(0, 1) * (Axy + Axy.transpose()) +
                  G(1, 1) * Ayy);
    });
    trip.reserve(static_cast<std::size_t>(mesh.n_cells()) * nl * nl);
    for (int c = 0; c < mesh.n_cells(); ++c)
      for (int i = 0; i < nl; ++i) {
        const auto di = space.cell_dof(c, i);
        for (int j = 0; j < nl; ++j) {
          const auto dj = space.cell_dof(c, j);
          trip.emplace_back(di.index, dj.index,
                            di.sign * dj.sign * local[c](i, j));
        }
      }
    return from_triplets(space.n_dofs(), space.n_dofs(), trip);
  }

  // DG spaces: the modal basis is orthogonal on the reference cell and the
  // map is affine, so local masses are diagonal.
  const bool vector = space.family().kind == FamilyKind::DGVector;
  const Eigen::VectorXd& norms = space.ref().scalar_norms();
  const int nl = space.n_local();
  trip.reserve(static_cast<std::size_t>(mesh.n_cells()) * nl);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const double s = cell_weight(c) * mesh.cell_geometry(c).detJ;
    for (int l = 0; l < nl; ++l) {
      const int mode = vector ? l / 2 : l;
      const int gi = space.cell_dof(c, l).index;
      trip.emplace_back(gi, gi, s * norms(mode));
    }
  }
  return from_triplets(space.n_dofs(), space.n_dofs(), trip);
}

SpMat assemble_div(const FESpace& V, const FESpace& Q) {
  if (!V.hdiv() || Q.family().kind != FamilyKind::DGScalar)
    throw std::invalid_argument("assemble_div: expected H(div) x DG scalar");
  const Mesh& mesh = V.mesh();
  const QuadratureRule rule = triangle_rule(kAssemblyDegree);
  const HdivTab vt = tabulate_hdiv(V.ref(), rule);
  const ScalarTab qt = tabulate_scalar(Q.ref(), rule);
  const Eigen::VectorXd W =
      Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), rule.size());

  // (div phi_j, psi_i)_K = \int_ref divhat_j psihat_i: no geometry factor.
  const Eigen::MatrixXd local = qt.val * W.asDiagonal() * vt.div.transpose();

  Triplets trip;
  trip.reserve(static_cast<std::size_t>(mesh.n_cells()) * Q.n_local() *
               V.n_local());
  for (int c = 0; c < mesh.n_cells(); ++c)
    for (int i = 0; i < Q.n_local(); ++i) {
      const auto di = Q.cell_dof(c, i);
      for (int j = 0; j < V.n_local(); ++j) {
        const auto dj = V.cell_dof(c, j);
        trip.emplace_back(di.index, dj.index, dj.sign * local(i, j));
      }
    }
  return from_triplets(Q.n_dofs(), V.n_dofs(), trip);
}

SpMat assemble_cross_mass(const FESpace& V, const FESpace& W,
                          const Eigen::VectorXd& cell_weight) {
  if (!V.hdiv() || W.family().kind != FamilyKind::DGVector)
    throw std::invalid_argument(
        "assemble_cross_mass: expected H(div) x DG vector");
  const Mesh& mesh = V.mesh();
  if (cell_weight.size() != mesh.n_cells())
    throw std::invalid_argument("assemble_cross_mass: weight size mismatch");
  const QuadratureRule rule = triangle_rule(kAssemblyDegree);
  const HdivTab vt = tabulate_hdiv(V.ref(), rule);
  const Eigen::MatrixXd modes = tabulate_dgvec_modes(W.ref(), rule);
  const Eigen::VectorXd Wq =
      Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), rule.size());

  // (chi_{2m+c}, phi_i)_K = w_K sum_g Wq (J nhat_i)_c psihat_m; the detJ of
  // the Piola map cancels against the volume element.
  const Eigen::MatrixXd Tx = vt.vx * Wq.asDiagonal() * modes.transpose();
  const Eigen::MatrixXd Ty = vt.vy * Wq.asDiagonal() * modes.transpose();

  const int nm = static_cast<int>(modes.rows());
  std::vector<Eigen::MatrixXd> local(mesh.n_cells());
  parallel_for(mesh.n_cells(), [&](int c) {
    const Mat2 J = mesh.cell_geometry(c).J;
    Eigen::MatrixXd loc(V.n_local(), W.n_local());
    for (int m = 0; m < nm; ++m) {
      loc.col(2 * m) = J(0, 0) * Tx.col(m) + J(0, 1) * Ty.col(m);
      loc.col(2 * m + 1) = J(1, 0) * Tx.col(m) + J(1, 1) * Ty.col(m);
    }
    local[c] = cell_weight(c) * loc;
  });

  Triplets trip;
  trip.reserve(static_cast<std::size_t>(mesh.n_cells()) * V.n_local() *
               W.n_local());
  for (int c = 0; c < mesh.n_cells(); ++c)
    for (int i = 0; i < V.n_local(); ++i) {
      const auto di = V.cell_dof(c, i);
      for (int j = 0; j < W.n_local(); ++j) {
        const auto dj = W.cell_dof(c, j);
        trip.emplace_back(di.index, dj.index, di.sign * local[c](i, j));
      }
    }
  return from_triplets(V.n_dofs(), W.n_dofs(), trip);
}

Eigen::VectorXd assemble_vector_load(
    const FESpace& V, const std::function<Vec2(const Vec2&)>& f) {
  if (!V.hdiv())
    throw std::invalid_argument("assemble_vector_load: expected H(div)");
  const Mesh& mesh = V.mesh();
  const QuadratureRule rule = triangle_rule(kAssemblyDegree);
  const HdivTab vt = tabulate_hdiv(V.ref(), rule);

  Eigen::VectorXd load = Eigen::VectorXd::Zero(V.n_dofs());
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const CellGeometry g = mesh.cell_geometry(c);
    Eigen::VectorXd loc = Eigen::VectorXd::Zero(V.n_local());
    for (int gq = 0; gq < rule.size(); ++gq) {
      // (f, phi_i): detJ from dx cancels the Piola 1/detJ.
      const Vec2 ft = g.J.transpose() * f(g.map(rule.points[gq]));
      loc += rule.weights[gq] *
             (ft.x() * vt.vx.col(gq) + ft.y() * vt.vy.col(gq));
    }
    for (int i = 0; i < V.n_local(); ++i) {
      const auto di = V.cell_dof(c, i);
      load(di.index) += di.sign * loc(i);
    }
  }
  return load;
}

Eigen::VectorXd assemble_scalar_load(
    const FESpace& Q, const std::function<double(const Vec2&)>& g) {
  if (Q.family().kind != FamilyKind::DGScalar)
    throw std::invalid_argument("assemble_scalar_load: expected DG scalar");
  const Mesh& mesh = Q.mesh();
  const QuadratureRule rule = triangle_rule(kAssemblyDegree);
  const ScalarTab qt = tabulate_scalar(Q.ref(), rule);

  Eigen::VectorXd load = Eigen::VectorXd::Zero(Q.n_dofs());
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const CellGeometry geo = mesh.cell_geometry(c);
    Eigen::VectorXd loc = Eigen::VectorXd::Zero(Q.n_local());
    for (int gq = 0; gq < rule.size(); ++gq)
      loc += rule.weights[gq] * geo.detJ * g(geo.map(rule.points[gq])) *
             qt.val.col(gq);
    for (int i = 0; i < Q.n_local(); ++i)
      load(Q.cell_dof(c, i).index) += loc(i);
  }
  return load;
}

Eigen::VectorXd assemble_pressure_boundary_load(
    const FESpace& V, const std::vector<int>& edges,
    const std::function<double(const Vec2&)>& p_D) {
  if (!V.hdiv())
    throw std::invalid_argument("boundary load: expected H(div)");
  const Mesh& mesh = V.mesh();
  const EdgeRule er = edge_rule(kEdgePoints);
  const int ne = V.ref().edge_moments();

  // The normal trace of the global basis of edge DOF (e,m) on e is
  // (2m+1) P_m(tau) / |e| in the global parameterisation, so the weak
  // Dirichlet entry reduces to a Legendre moment of the data.
  Eigen::VectorXd load = Eigen::VectorXd::Zero(V.n_dofs());
  for (const int e : edges) {
    if (!mesh.is_boundary_edge(e))
      throw std::invalid_argument("boundary load on interior edge");
    const double orient = mesh.boundary_orientation(e);
    const Vec2 a = mesh.vertices[mesh.edges[e][0]];
    const Vec2 b = mesh.vertices[mesh.edges[e][1]];
    for (int m = 0; m < ne; ++m) {
      double mom = 0.0;
      for (int g = 0; g < er.size(); ++g) {
        const double tau = er.points[g];
        mom += er.weights[g] * p_D(a + tau * (b - a)) * legendre01(m, tau);
      }
      load(V.edge_dof(e, m)) = -orient * (2.0 * m + 1.0) * mom;
    }
  }
  return load;
}

std::vector<std::pair<int, double>> boundary_normal_values(
    const FESpace& V, const std::vector<int>& edges,
    const std::function<double(const Vec2&)>& v_N) {
  if (!V.hdiv())
    throw std::invalid_argument("boundary_normal_values: expected H(div)");
  const Mesh& mesh = V.mesh();
  const EdgeRule er = edge_rule(kEdgePoints);
  const int ne = V.ref().edge_moments();

  std::vector<std::pair<int, double>> values;
  values.reserve(edges.size() * ne);
  for (const int e : edges) {
    const double orient = mesh.boundary_orientation(e);
    const Vec2 a = mesh.vertices[mesh.edges[e][0]];
    const Vec2 b = mesh.vertices[mesh.edges[e][1]];
    const double len = mesh.edge_length(e);
    for (int m = 0; m < ne; ++m) {
      double mom = 0.0;
      for (int g = 0; g < er.size(); ++g) {
        const double tau = er.points[g];
        mom += er.weights[g] * v_N(a + tau * (b - a)) * legendre01(m, tau);
      }
      values.emplace_back(V.edge_dof(e, m), orient * len * mom);
    }
  }
  return values;
}

std::vector<int> normal_constraint_dofs(const FESpace& V,
                                        const std::vector<int>& edges) {
  if (!V.hdiv())
    throw std::invalid_argument("normal_constraint_dofs: expected H(div)");
  const int ne = V.ref().edge_moments();
  std::vector<int> dofs;
  dofs.reserve(edges.size() * ne);
  for (const int e : edges)
    for (int m = 0; m < ne; ++m) dofs.push_back(V.edge_dof(e, m));
  return dofs;
}

SystemBlocks assemble_system(const SpaceSet& s, const MaterialField& mat) {
  if (mat.n_cells() != s.mesh->n_cells())
    throw std::invalid_argument("assemble_system: material/mesh mismatch");
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(mat.n_cells());
  SystemBlocks b;
  b.Mv = assemble_mass(*s.V, mat.weight_rho_a());
  b.Mp = assemble_mass(*s.Q, mat.weight_inv_kappa());
  b.MW = assemble_mass(*s.W, ones);
  b.MQ = assemble_mass(*s.Q, ones);
  b.B = assemble_div(*s.V, *s.Q);
  b.Xw = assemble_cross_mass(*s.V, *s.W, mat.weight_rho_u());
  b.X1 = assemble_cross_mass(*s.V, *s.W, ones);
  b.Cqp = assemble_mass(*s.Q, mat.weight_rho_q());
  b.omega_rho2 = mat.omega_rho * mat.omega_rho;
  b.omega_kappa2 = mat.omega_kappa * mat.omega_kappa;
  b.gamma = mat.gamma;
  return b;
}

EnergyForm::EnergyForm(const SpaceSet& s, const MaterialField& mat)
    : Mv_(assemble_mass(*s.V, mat.weight_rho_a())),
      Mp_(assemble_mass(*s.Q, mat.weight_inv_kappa())),
      Mu_(assemble_mass(*s.W, mat.weight_rho_u())),
      Mw_(assemble_mass(*s.W, mat.weight_rho_w())),
      Mq_(assemble_mass(*s.Q, mat.weight_rho_q())),
      Mr_(assemble_mass(*s.Q, mat.weight_rho_r())) {}

double EnergyForm::operator()(const StateVector& U) const {
  double e2 = 0.0;
  e2 += U.v().dot(Mv_ * U.v());
  e2 += U.p().dot(Mp_ * U.p());
  e2 += U.u().dot(Mu_ * U.u());
  e2 += U.w().dot(Mw_ * U.w());
  e2 += U.q().dot(Mq_ * U.q());
  e2 += U.r().dot(Mr_ * U.r());
  return std::sqrt(std::max(e2, 0.0));
}

double energy(const StateVector& U, const MaterialField& mat,
              const SpaceSet& spaces) {
  return EnergyForm(spaces, mat)(U);
}

}  // namespace metawave
