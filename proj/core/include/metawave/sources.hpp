#pragma once

#include <functional>
#include <map>
#include <string>

#include "metawave/geometry.hpp"

namespace metawave {

/// Named boundary pressure signals.
///
///   corner_plane:   A sin(mu_f pi (x + y - c t)) behind the front
///                   c t > x + y (zero onset), gated to x < x_cut; params:
///                   mu_f (required), amplitude (10), speed (10), x_cut (0.6).
///   left_gaussian:  A exp(-(1 + sin(k pi (x^2 + (y-1)^2 - c t)))) for
///                   y - 1 < 0.1; params: amplitude (10), speed (10),
///                   wavenumber (20).
///   zero:           identically zero; no params.
///   custom-constant: fixed value; params: value (required).
///
/// Unknown names and unknown or missing parameter keys are errors.
std::function<double(double, const Vec2&)> make_boundary_source(
    const std::string& name, const std::map<std::string, double>& params);

/// Convenience point evaluation of a named source.
double source_pD(const std::string& name,
                 const std::map<std::string, double>& params, double t,
                 double x, double y);

}  // namespace metawave
