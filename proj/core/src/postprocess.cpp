#include "metawave/postprocess.hpp"

#include <Eigen/Cholesky>

#include "metawave/assembly.hpp"
#include "metawave/quadrature.hpp"

namespace metawave {

PressurePost postprocess_pressure(
    const SpaceSet& spaces, const MaterialField& mat, const StateVector& Un,
    const StateVector& Un1, double tn, double dt,
    const std::function<Vec2(double, const Vec2&)>& f) {
  const Mesh& mesh = *spaces.mesh;
  const FESpace& V = *spaces.V;
  const FESpace& W = *spaces.W;
  const FESpace& Q = *spaces.Q;
  const FESpace& Qs = *spaces.Qstar;

  const QuadratureRule rule = triangle_rule(8);
  const HdivTab vt = tabulate_hdiv(V.ref(), rule);
  const Eigen::MatrixXd modes = tabulate_dgvec_modes(W.ref(), rule);
  const ScalarTab st = tabulate_scalar(Qs.ref(), rule);
  const Eigen::VectorXd Wq =
      Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), rule.size());

  // Reference gradient-product blocks, combined per cell through (J^T J)^{-1}.
  const Eigen::MatrixXd Axx = st.gx * Wq.asDiagonal() * st.gx.transpose();
  const Eigen::MatrixXd Axy = st.gx * Wq.asDiagonal() * st.gy.transpose();
  const Eigen::MatrixXd Ayy = st.gy * Wq.asDiagonal() * st.gy.transpose();

  const int ns = Qs.n_local();
  const int nv = V.n_local();
  const int nm = static_cast<int>(modes.rows());
  const double t_half = tn + 0.5 * dt;

  PressurePost post;
  post.time = t_half;
  post.coeffs.resize(Qs.n_dofs());

  for (int c = 0; c < mesh.n_cells(); ++c) {
    const CellGeometry g = mesh.cell_geometry(c);
    const Mat2 Gi = (g.J.transpose() * g.J).inverse();
    const Eigen::MatrixXd S =
        g.detJ *
        (Gi(0, 0) * Axx + Gi(0, 1) * (Axy + Axy.transpose()) + Gi(1, 1) * Ayy);

    // Local velocity rate and auxiliary average.
    Eigen::VectorXd dv(nv);
    for (int l = 0; l < nv; ++l) {
      const auto d = V.cell_dof(c, l);
      dv(l) = d.sign * (Un1.v()(d.index) - Un.v()(d.index)) / dt;
    }
    Eigen::VectorXd ux(nm), uy(nm);
    for (int m = 0; m < nm; ++m) {
      const int ix = W.cell_dof(c, 2 * m).index;
      const int iy = W.cell_dof(c, 2 * m + 1).index;
      ux(m) = 0.5 * (Un.u()(ix) + Un1.u()(ix));
      uy(m) = 0.5 * (Un.u()(iy) + Un1.u()(iy));
    }

    const double rho_a = mat.rho_a(c);
    const double rho_u = mat.rho_u(c);

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ns);
    for (int gq = 0; gq < rule.size(); ++gq) {
      const Vec2 dv_ref(dv.dot(vt.vx.col(gq)), dv.dot(vt.vy.col(gq)));
      const Vec2 dv_phys = g.piola(dv_ref);
      const Vec2 u_phys(ux.dot(modes.col(gq)), uy.dot(modes.col(gq)));
      Vec2 F = -rho_a * dv_phys - rho_u * u_phys;
      if (f) {
        const Vec2 x = g.map(rule.points[gq]);
        F += 0.5 * (f(tn, x) + f(tn + dt, x));
      }
      const Vec2 Fh = g.Jinv * F;  // pairs with reference gradients
      rhs += (Wq(gq) * g.detJ) *
             (Fh.x() * st.gx.col(gq) + Fh.y() * st.gy.col(gq));
    }

    // grad psi_0 = 0: mode 0 is fixed by the cell-mean condition, the
    // remaining modes solve the (SPD) reduced gradient system.
    Eigen::VectorXd loc(ns);
    const int q0 = Q.cell_dof(c, 0).index;
    loc(0) = 0.5 * (Un.p()(q0) + Un1.p()(q0));
    loc.tail(ns - 1) =
        S.bottomRightCorner(ns - 1, ns - 1).llt().solve(rhs.tail(ns - 1));
    for (int l = 0; l < ns; ++l)
      post.coeffs(Qs.cell_dof(c, l).index) = loc(l);
  }
  return post;
}

}  // namespace metawave
