#pragma once

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "metawave/assembly.hpp"
#include "metawave/state.hpp"

namespace metawave {

/// Uniform time grid on [t0, t0 + n_steps * dt].
struct TimeGrid {
  double t0 = 0.0;
  double T = 1.0;
  int n_steps = 1;

  double dt() const { return (T - t0) / n_steps; }
  double t(int n) const { return t0 + n * dt(); }
};

/// Crank-Nicolson evolution of the first-order system
///   M dU/dt + K U = L(t),
/// discretised as  (M/dt + K/2) U^{n+1} = (M/dt - K/2) U^n + L^{n+1/2}.
/// The left-hand matrix is factorised once (sparse LU) and reused for
/// every step; time-dependent data enters through the right-hand side
/// only.  Essential conditions on v.n are eliminated symmetrically, which
/// keeps the factor-once property.
class CNSystem {
 public:
  CNSystem(const SystemBlocks& blocks, const BlockLayout& layout, double dt);

  const BlockLayout& layout() const { return layout_; }
  double dt() const { return dt_; }

  /// Mark velocity DOFs (indices within the v block) as constrained.
  /// Must be called before factorize().
  void constrain(const std::vector<int>& v_dofs);

  void factorize();

  /// One step: load_half is the time-averaged load (L^n + L^{n+1})/2 in
  /// the monolithic layout; bc_values are the values of the constrained
  /// DOFs at t^{n+1}, in the order passed to constrain().
  Eigen::VectorXd step(const Eigen::VectorXd& Un,
                       const Eigen::VectorXd& load_half,
                       const std::vector<double>& bc_values = {}) const;

 private:
  BlockLayout layout_;
  double dt_;
  SpMat A_;          // M/dt + K/2, possibly with constrained rows/cols cleared
  SpMat A_full_;     // unconstrained A (right-hand-side correction)
  SpMat A_rhs_;      // M/dt - K/2
  std::vector<int> constrained_;
  std::unique_ptr<Eigen::SparseLU<SpMat>> lu_;
};

/// Time-dependent data of one run.  Null callables mean zero.
struct BoundarySource {
  std::vector<int> edges;
  std::function<double(double, const Vec2&)> p_D;
};

struct TransientSource {
  std::function<Vec2(double, const Vec2&)> f;
  std::function<double(double, const Vec2&)> g;
  std::vector<BoundarySource> pressure_parts;  // weak Dirichlet data
  std::vector<int> neumann_edges;              // essential v.n edges
  std::function<double(double, const Vec2&)> v_N;
};

/// Assemble the monolithic load L(t).
Eigen::VectorXd assemble_transient_load(const SpaceSet& spaces,
                                        const BlockLayout& layout,
                                        const TransientSource& src, double t);

using StateObserver =
    std::function<void(int step, double t, const StateVector& U)>;

/// March the system over the grid; the observer (if any) sees the initial
/// state as step 0 and every accepted step after that.  Loads at interior
/// time levels are assembled once and shared by adjacent steps.
StateVector run_transient(CNSystem& sys, const SpaceSet& spaces,
                          const StateVector& U0, const TransientSource& src,
                          const TimeGrid& grid,
                          const StateObserver& observe = {});

}  // namespace metawave
