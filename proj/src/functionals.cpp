#include "volterra/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "volterra/quadrature.hpp"

namespace volterra {

namespace {

DeltaNorm exact(double value) { return {value, value, true}; }

DeltaNorm growth_bracket(const Weight& v, double rho) {
    const double upper = std::exp(-v.log_value(rho));
    const double lower = std::min(upper, 1.0 / associated_weight(v, rho));
    return {lower, upper, false};
}

DeltaNorm bloch_bracket(const Weight& v, double rho) {
    double lower = 1.0;
    if (rho > 0.0) {
        const double log_rho = std::log(rho);
        for (const auto& m : v.monomial_table())
            lower = std::max(lower, std::exp((m.degree + 1.0) * log_rho - std::log(m.degree + 1.0) - m.log_sup));
        lower = std::max(lower, v.lacunary_value(rho) / v.lacunary_norm());
    }
    const double upper = std::max(lower, 1.0 + inverse_weight_integral(v, rho));
    return {lower, upper, false};
}

}  // namespace

double inverse_weight_integral(const Weight& v, double rho) {
    if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("radius must lie in [0, 1)");
    auto integrand = [&](double t) { return std::exp(-v.log_value(t)); };
    double total = 0.0, a = 0.0;
    // Half-octave panels toward the boundary.
    for (int k = 1; a < rho; ++k) {
        const double b = std::min(rho, 1.0 - std::exp2(-0.5 * k));
        if (b > a) total += gl15_adaptive<double>(integrand, a, b, 0.0, 12);
        a = b;
    }
    return total;
}

DeltaNorm delta_norm(const SpaceSpec& X, Complex z) {
    const double rho = std::abs(z);
    if (!(rho < 1.0)) throw DomainError("point evaluation needs |z| < 1");
    const double one_minus = (1.0 - rho) * (1.0 + rho);
    switch (X.kind()) {
        case SpaceKind::hinf: return exact(1.0);
        case SpaceKind::hardy:
        case SpaceKind::bergman: return exact(std::pow(one_minus, -X.delta_exponent()));
        case SpaceKind::hv_inf:
        case SpaceKind::hv_0: return growth_bracket(X.weight(), rho);
        case SpaceKind::bv_inf:
        case SpaceKind::bv_0: return bloch_bracket(X.weight(), rho);
    }
    throw DomainError("unsupported space");
}

std::vector<DeltaNorm> delta_norm_profile(const SpaceSpec& X, std::span<const double> radii) {
    std::vector<DeltaNorm> out;
    out.reserve(radii.size());
    for (double r : radii) {
        if (!(r >= 0.0 && r < 1.0)) throw DomainError("radii must lie in [0, 1)");
        out.push_back(delta_norm(X, r));
    }
    return out;
}

}  // namespace volterra
