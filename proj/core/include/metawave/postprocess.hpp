#pragma once

#include <functional>

#include "metawave/material.hpp"
#include "metawave/state.hpp"

namespace metawave {

/// Post-processed pressure, one cell-local solve per element.
///
/// On each cell K, p* in P_{k+2}(K) satisfies
///   (grad p*, grad w)_K = -(rho_a dv/dt + rho_u u, grad w)_K + (f, grad w)_K
/// for all w in P_{k+2}(K), with dv/dt the discrete backward difference
/// over the step and u, p taken at the half step; the gradient system is
/// closed by matching the cell mean of p at the half step.  The result
/// approximates the pressure at t_n + dt/2.
struct PressurePost {
  Eigen::VectorXd coeffs;  // in the Q* space of the pairing
  double time = 0.0;       // t_n + dt/2
};

PressurePost postprocess_pressure(
    const SpaceSet& spaces, const MaterialField& mat, const StateVector& Un,
    const StateVector& Un1, double tn, double dt,
    const std::function<Vec2(double, const Vec2&)>& f = {});

}  // namespace metawave
