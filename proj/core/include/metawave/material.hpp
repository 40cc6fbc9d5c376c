#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace metawave {

/// Piecewise-constant material data of the dispersive model.
///
/// Primitive coefficients are stored per cell; the auxiliary-field
/// weights are derived from them on demand, so they can never go stale:
///   rho_u = rho_a Omega_rho^2          rho_w = rho_a omega_rho^2 Omega_rho^2
///   rho_q = Omega_kappa^2 / kappa_a    rho_r = omega_kappa^2 Omega_kappa^2 / kappa_a
/// Cells with Omega_rho = Omega_kappa = 0 carry no auxiliary energy
/// (standard acoustic material).
struct MaterialField {
  double omega_rho = 1.0;
  double omega_kappa = 1.0;
  double gamma = 0.0;

  Eigen::VectorXd rho_a, kappa_a, Omega_rho, Omega_kappa;  // per cell

  int n_cells() const { return static_cast<int>(rho_a.size()); }

  double rho_u(int c) const { return rho_a(c) * Omega_rho(c) * Omega_rho(c); }
  double rho_w(int c) const { return omega_rho * omega_rho * rho_u(c); }
  double rho_q(int c) const {
    return Omega_kappa(c) * Omega_kappa(c) / kappa_a(c);
  }
  double rho_r(int c) const { return omega_kappa * omega_kappa * rho_q(c); }
  double inv_kappa(int c) const { return 1.0 / kappa_a(c); }
  bool is_dispersive(int c) const {
    return Omega_rho(c) != 0.0 || Omega_kappa(c) != 0.0;
  }

  Eigen::VectorXd weight_rho_a() const { return rho_a; }
  Eigen::VectorXd weight_inv_kappa() const;
  Eigen::VectorXd weight_rho_u() const;
  Eigen::VectorXd weight_rho_w() const;
  Eigen::VectorXd weight_rho_q() const;
  Eigen::VectorXd weight_rho_r() const;
};

/// Spatially uniform coefficients with Omega = 0 everywhere.
MaterialField uniform_material(int n_cells, double rho_a, double kappa_a,
                               double omega_rho, double omega_kappa,
                               double gamma);

/// Switch on the dispersive terms on all cells of the given region id.
void apply_region_contrast(MaterialField& mat,
                           const std::vector<int>& cell_region, int region_id,
                           double Omega_rho, double Omega_kappa);

struct Diagnostics {
  bool ok = true;
  std::vector<std::string> issues;
};

/// Admissibility checks: positive rho_a and kappa_a, non-negative
/// Omega_rho, Omega_kappa, omega_rho, omega_kappa, gamma, consistent sizes.
Diagnostics validate(const MaterialField& mat);

}  // namespace metawave
