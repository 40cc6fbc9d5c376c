#include "metawave/stepper.hpp"

#include <stdexcept>

namespace metawave {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

void append_block(Triplets& trip, const SpMat& block, int row_off, int col_off,
                  double scale) {
  for (int k = 0; k < block.outerSize(); ++k)
    for (SpMat::InnerIterator it(block, k); it; ++it)
      trip.emplace_back(row_off + static_cast<int>(it.row()),
                        col_off + static_cast<int>(it.col()),
                        scale * it.value());
}

void append_block_T(Triplets& trip, const SpMat& block, int row_off,
                    int col_off, double scale) {
  for (int k = 0; k < block.outerSize(); ++k)
    for (SpMat::InnerIterator it(block, k); it; ++it)
      trip.emplace_back(row_off + static_cast<int>(it.col()),
                        col_off + static_cast<int>(it.row()),
                        scale * it.value());
}

}  // namespace

CNSystem::CNSystem(const SystemBlocks& b, const BlockLayout& l, double dt)
    : layout_(l), dt_(dt) {
  if (dt == 0.0) throw std::invalid_argument("CNSystem: dt must be nonzero");

  // Stiffness-like part K acting on (v, p, u, w, q, r):
  //   v:  -B^T p + Xw u          p:  B v + Cqp q
  //   u:  -X1^T v + w2 MW w      w:  -MW u
  //   q:  -MQ p + gamma MQ q + k2 MQ r
  //   r:  -MQ q
  auto addK = [&](Triplets& trip, double s) {
    append_block_T(trip, b.B, l.off_v, l.off_p, -s);
    append_block(trip, b.Xw, l.off_v, l.off_u, s);
    append_block(trip, b.B, l.off_p, l.off_v, s);
    append_block(trip, b.Cqp, l.off_p, l.off_q, s);
    append_block_T(trip, b.X1, l.off_u, l.off_v, -s);
    append_block(trip, b.MW, l.off_u, l.off_w, s * b.omega_rho2);
    append_block(trip, b.MW, l.off_w, l.off_u, -s);
    append_block(trip, b.MQ, l.off_q, l.off_p, -s);
    append_block(trip, b.MQ, l.off_q, l.off_q, s * b.gamma);
    append_block(trip, b.MQ, l.off_q, l.off_r, s * b.omega_kappa2);
    append_block(trip, b.MQ, l.off_r, l.off_q, -s);
  };
  auto addM = [&](Triplets& trip, double s) {
    append_block(trip, b.Mv, l.off_v, l.off_v, s);
    append_block(trip, b.Mp, l.off_p, l.off_p, s);
    append_block(trip, b.MW, l.off_u, l.off_u, s);
    append_block(trip, b.MW, l.off_w, l.off_w, s);
    append_block(trip, b.MQ, l.off_q, l.off_q, s);
    append_block(trip, b.MQ, l.off_r, l.off_r, s);
  };

  Triplets ta, tr;
  addM(ta, 1.0 / dt_);
  addK(ta, 0.5);
  addM(tr, 1.0 / dt_);
  addK(tr, -0.5);

  A_full_.resize(l.total, l.total);
  A_full_.setFromTriplets(ta.begin(), ta.end());
  A_full_.makeCompressed();
  A_ = A_full_;

  A_rhs_.resize(l.total, l.total);
  A_rhs_.setFromTriplets(tr.begin(), tr.end());
  A_rhs_.makeCompressed();
}

void CNSystem::constrain(const std::vector<int>& v_dofs) {
  if (lu_) throw std::logic_error("constrain must precede factorize");
  constrained_.clear();
  constrained_.reserve(v_dofs.size());
  for (const int d : v_dofs) {
    if (d < 0 || d >= layout_.nv)
      throw std::invalid_argument("constrain: DOF outside the v block");
    constrained_.push_back(layout_.off_v + d);
  }

  std::vector<char> mask(layout_.total, 0);
  for (const int d : constrained_) mask[d] = 1;

  Triplets trip;
  trip.reserve(A_full_.nonZeros() + constrained_.size());
  for (int k = 0; k < A_full_.outerSize(); ++k)
    for (SpMat::InnerIterator it(A_full_, k); it; ++it)
      if (!mask[it.row()] && !mask[it.col()])
        trip.emplace_back(static_cast<int>(it.row()),
                          static_cast<int>(it.col()), it.value());
  for (const int d : constrained_) trip.emplace_back(d, d, 1.0);

  A_.resize(layout_.total, layout_.total);
  A_.setFromTriplets(trip.begin(), trip.end());
  A_.makeCompressed();
}

void CNSystem::factorize() {
  lu_ = std::make_unique<Eigen::SparseLU<SpMat>>();
  lu_->analyzePattern(A_);
  lu_->factorize(A_);
  if (lu_->info() != Eigen::Success)
    throw std::runtime_error("CNSystem: sparse LU factorisation failed");
}

Eigen::VectorXd CNSystem::step(const Eigen::VectorXd& Un,
                               const Eigen::VectorXd& load_half,
                               const std::vector<double>& bc_values) const {
  if (!lu_) throw std::logic_error("CNSystem: call factorize() first");
  if (bc_values.size() != constrained_.size())
    throw std::invalid_argument("CNSystem: constrained value count mismatch");

  Eigen::VectorXd rhs = A_rhs_ * Un + load_half;
  if (!constrained_.empty()) {
    Eigen::VectorXd lift = Eigen::VectorXd::Zero(layout_.total);
    for (std::size_t i = 0; i < constrained_.size(); ++i)
      lift(constrained_[i]) = bc_values[i];
    rhs -= A_full_ * lift;
    for (std::size_t i = 0; i < constrained_.size(); ++i)
      rhs(constrained_[i]) = bc_values[i];
  }
  return lu_->solve(rhs);
}

Eigen::VectorXd assemble_transient_load(const SpaceSet& spaces,
                                        const BlockLayout& layout,
                                        const TransientSource& src, double t) {
  Eigen::VectorXd L = Eigen::VectorXd::Zero(layout.total);
  if (src.f) {
    auto f_t = [&](const Vec2& x) { return src.f(t, x); };
    L.segment(layout.off_v, layout.nv) += assemble_vector_load(*spaces.V, f_t);
  }
  if (src.g) {
    auto g_t = [&](const Vec2& x) { return src.g(t, x); };
    L.segment(layout.off_p, layout.np) += assemble_scalar_load(*spaces.Q, g_t);
  }
  for (const auto& part : src.pressure_parts) {
    if (!part.p_D || part.edges.empty()) continue;
    auto pd_t = [&](const Vec2& x) { return part.p_D(t, x); };
    L.segment(layout.off_v, layout.nv) +=
        assemble_pressure_boundary_load(*spaces.V, part.edges, pd_t);
  }
  return L;
}

StateVector run_transient(CNSystem& sys, const SpaceSet& spaces,
                          const StateVector& U0, const TransientSource& src,
                          const TimeGrid& grid, const StateObserver& observe) {
  const BlockLayout& layout = sys.layout();
  StateVector U = U0;
  if (observe) observe(0, grid.t0, U);

  auto bc_at = [&](double t) -> std::vector<double> {
    if (src.neumann_edges.empty()) return {};
    auto vn_t = [&](const Vec2& x) { return src.v_N ? src.v_N(t, x) : 0.0; };
    const auto pairs =
        boundary_normal_values(*spaces.V, src.neumann_edges, vn_t);
    std::vector<double> vals(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) vals[i] = pairs[i].second;
    return vals;
  };

  Eigen::VectorXd L_prev =
      assemble_transient_load(spaces, layout, src, grid.t0);
  for (int n = 0; n < grid.n_steps; ++n) {
    const double t_next = grid.t(n + 1);
    Eigen::VectorXd L_next =
        assemble_transient_load(spaces, layout, src, t_next);
    const Eigen::VectorXd load_half = 0.5 * (L_prev + L_next);
    U.data = sys.step(U.data, load_half, bc_at(t_next));
    L_prev.swap(L_next);
    if (observe) observe(n + 1, t_next, U);
  }
  return U;
}

}  // namespace metawave
