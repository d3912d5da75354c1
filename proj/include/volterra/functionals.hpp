#pragma once

#include <span>
#include <vector>

#include "volterra/space.hpp"

namespace volterra {

/// Bracket for the point-evaluation norm ||delta_z||_X.
struct DeltaNorm {
    double lower = 1;
    double upper = 1;
    bool closed_form = true;
};

DeltaNorm delta_norm(const SpaceSpec& X, Complex z);

/// delta_norm at each radius (all supported spaces are radial).
std::vector<DeltaNorm> delta_norm_profile(const SpaceSpec& X, std::span<const double> radii);

/// int_0^rho dt / v(t), the Bloch-type growth integral.
double inverse_weight_integral(const Weight& v, double rho);

}  // namespace volterra
