#include "metawave/material.hpp"

#include <cmath>

namespace metawave {

Eigen::VectorXd MaterialField::weight_inv_kappa() const {
  return kappa_a.cwiseInverse();
}

Eigen::VectorXd MaterialField::weight_rho_u() const {
  return rho_a.cwiseProduct(Omega_rho.cwiseAbs2());
}

Eigen::VectorXd MaterialField::weight_rho_w() const {
  return omega_rho * omega_rho * weight_rho_u();
}

Eigen::VectorXd MaterialField::weight_rho_q() const {
  return Omega_kappa.cwiseAbs2().cwiseQuotient(kappa_a);
}

Eigen::VectorXd MaterialField::weight_rho_r() const {
  return omega_kappa * omega_kappa * weight_rho_q();
}

MaterialField uniform_material(int n_cells, double rho_a, double kappa_a,
                               double omega_rho, double omega_kappa,
                               double gamma) {
  MaterialField m;
  m.omega_rho = omega_rho;
  m.omega_kappa = omega_kappa;
  m.gamma = gamma;
  m.rho_a = Eigen::VectorXd::Constant(n_cells, rho_a);
  m.kappa_a = Eigen::VectorXd::Constant(n_cells, kappa_a);
  m.Omega_rho = Eigen::VectorXd::Zero(n_cells);
  m.Omega_kappa = Eigen::VectorXd::Zero(n_cells);
  return m;
}

void apply_region_contrast(MaterialField& mat,
                           const std::vector<int>& cell_region, int region_id,
                           double Omega_rho, double Omega_kappa) {
  for (int c = 0; c < mat.n_cells(); ++c) {
    if (cell_region[c] != region_id) continue;
    mat.Omega_rho(c) = Omega_rho;
    mat.Omega_kappa(c) = Omega_kappa;
  }
}

Diagnostics validate(const MaterialField& mat) {
  Diagnostics d;
  auto flag = [&d](const std::string& msg) {
    d.ok = false;
    d.issues.push_back(msg);
  };

  const int n = mat.n_cells();
  if (n == 0) flag("material has no cells");
  if (mat.kappa_a.size() != n || mat.Omega_rho.size() != n ||
      mat.Omega_kappa.size() != n)
    flag("coefficient arrays have inconsistent sizes");

  auto check_cellwise = [&](const Eigen::VectorXd& v, bool strictly_positive,
                            const std::string& name) {
    if (v.size() != n) return;
    for (int c = 0; c < n; ++c) {
      const bool bad = strictly_positive ? !(v(c) > 0.0) : !(v(c) >= 0.0);
      if (!bad && std::isfinite(v(c))) continue;
      flag(name + " must be " +
           (strictly_positive ? "positive" : "non-negative") + " (cell " +
           std::to_string(c) + ": " + std::to_string(v(c)) + ")");
      return;  // one message per field is enough
    }
  };
  check_cellwise(mat.rho_a, true, "rho_a");
  check_cellwise(mat.kappa_a, true, "kappa_a");
  check_cellwise(mat.Omega_rho, false, "Omega_rho");
  check_cellwise(mat.Omega_kappa, false, "Omega_kappa");

  if (!(mat.omega_rho >= 0.0)) flag("omega_rho must be non-negative");
  if (!(mat.omega_kappa >= 0.0)) flag("omega_kappa must be non-negative");
  if (!(mat.gamma >= 0.0)) flag("gamma must be non-negative");
  return d;
}

}  // namespace metawave
