#pragma once

#include <vector>

#include "metawave/fespace.hpp"

namespace metawave {

/// Sample a scalar function at n equispaced points strictly inside
/// (x0, x1) on the horizontal line y = const: x_i = x0 + (i + 1/2) dx.
std::vector<double> sample_on_line(const FESpace& space,
                                   const Eigen::VectorXd& coeffs, double y,
                                   double x0, double x1, int n);

/// Phase change of the dominant spatial harmonic between two snapshots of
/// a signal sampled on the same line.  Both traces are Hann-windowed and
/// transformed; the bin with the largest combined magnitude (positive
/// frequencies only) decides, and the result is the phase of
/// S2 conj(S1) at that bin, wrapped to (-pi, pi].  A wave whose crests
/// move towards larger x between the snapshots yields a negative shift.
double dominant_phase_shift(const std::vector<double>& s1,
                            const std::vector<double>& s2);

}  // namespace metawave
