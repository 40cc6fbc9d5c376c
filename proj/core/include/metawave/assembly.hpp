#pragma once

#include <functional>
#include <vector>

#include <Eigen/Sparse>

#include "metawave/fespace.hpp"
#include "metawave/material.hpp"
#include "metawave/quadrature.hpp"
#include "metawave/state.hpp"

namespace metawave {

using SpMat = Eigen::SparseMatrix<double>;

/// Reference basis values tabulated at the points of a quadrature rule
/// (rows: basis functions, columns: quadrature points).
struct HdivTab {
  Eigen::MatrixXd vx, vy, div;
};
HdivTab tabulate_hdiv(const ReferenceElement& ref, const QuadratureRule& rule);

struct ScalarTab {
  Eigen::MatrixXd val, gx, gy;
};
ScalarTab tabulate_scalar(const ReferenceElement& ref, const QuadratureRule& rule);

/// Scalar modes of a vector DG element (component factor stripped).
Eigen::MatrixXd tabulate_dgvec_modes(const ReferenceElement& ref,
                                     const QuadratureRule& rule);

/// Mass matrix with a piecewise-constant weight (one value per cell).
SpMat assemble_mass(const FESpace& space, const Eigen::VectorXd& cell_weight);

/// Divergence coupling B(i,j) = (div phi_j, psi_i): Q rows, V columns.
SpMat assemble_div(const FESpace& V, const FESpace& Q);

/// Weighted vector mass between an H(div) space and a vector DG space:
/// X(i,j) = (w chi_j, phi_i): V rows, W columns.
SpMat assemble_cross_mass(const FESpace& V, const FESpace& W,
                          const Eigen::VectorXd& cell_weight);

/// Load vectors (f, phi_i) and (g, psi_i).
Eigen::VectorXd assemble_vector_load(
    const FESpace& V, const std::function<Vec2(const Vec2&)>& f);
Eigen::VectorXd assemble_scalar_load(
    const FESpace& Q, const std::function<double(const Vec2&)>& g);

/// Weak pressure data: contributions -\int_e p_D (phi.n_out) ds on the
/// given boundary edges.  Entries appear only on the edge DOFs of those
/// edges.
Eigen::VectorXd assemble_pressure_boundary_load(
    const FESpace& V, const std::vector<int>& edges,
    const std::function<double(const Vec2&)>& p_D);

/// Essential data for v.n_out = v_N: the constrained edge-DOF values.
/// Returns (dof index, value) pairs for all moments of the given edges.
std::vector<std::pair<int, double>> boundary_normal_values(
    const FESpace& V, const std::vector<int>& edges,
    const std::function<double(const Vec2&)>& v_N);

/// The DOF indices constrained by essential data on the given edges, in
/// the same order boundary_normal_values emits their values.
std::vector<int> normal_constraint_dofs(const FESpace& V,
                                        const std::vector<int>& edges);

/// All matrices of the semi-discrete system.
struct SystemBlocks {
  SpMat Mv;   // (rho_a .,.) on V
  SpMat Mp;   // (kappa_a^{-1} .,.) on Q
  SpMat MW;   // unweighted mass on W
  SpMat MQ;   // unweighted mass on Q
  SpMat B;    // (div .,.)  Q rows x V cols
  SpMat Xw;   // (rho_u .,.) V rows x W cols
  SpMat X1;   // unweighted  V rows x W cols
  SpMat Cqp;  // (rho_q .,.) on Q
  double omega_rho2 = 0.0, omega_kappa2 = 0.0, gamma = 0.0;
};
SystemBlocks assemble_system(const SpaceSet& spaces, const MaterialField& mat);

/// The conserved (gamma = 0) quadratic form: squared field energy
///   E^2 = |v|_{rho_a}^2 + |p|_{1/kappa}^2 + |u|_{rho_u}^2 + |w|_{rho_w}^2
///       + |q|_{rho_q}^2 + |r|_{rho_r}^2.
/// A seminorm: auxiliary blocks supported on non-dispersive cells do not
/// contribute.
class EnergyForm {
 public:
  EnergyForm(const SpaceSet& spaces, const MaterialField& mat);
  double operator()(const StateVector& U) const;  // returns E, not E^2

 private:
  SpMat Mv_, Mp_, Mu_, Mw_, Mq_, Mr_;
};

double energy(const StateVector& U, const MaterialField& mat,
              const SpaceSet& spaces);

}  // namespace metawave
