#pragma once

// 15-point Gauss-Legendre panels and adaptive bisection on top of them.

#include <array>
#include <cmath>
#include <limits>

#include "volterra/common.hpp"

namespace volterra {

struct GaussLegendre15 {
    std::array<double, 15> nodes;    // on [-1, 1], increasing
    std::array<double, 15> weights;
};

const GaussLegendre15& gauss_legendre15();

/// One GL15 panel on [a, b]; T may be real or complex.
template <class T, class F>
T gl15_panel(F&& f, double a, double b) {
    const auto& rule = gauss_legendre15();
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    T sum{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

/// Adaptive GL15: a panel is accepted when it agrees with its two halves to
/// max(abs_tol, 64 eps |I|); otherwise both halves are refined recursively.
template <class T, class F>
T gl15_adaptive(F&& f, double a, double b, double abs_tol, int max_depth = 40) {
    struct Local {
        static T run(F& f, double a, double b, T whole, double tol, int depth) {
            const double m = 0.5 * (a + b);
            const T left = gl15_panel<T>(f, a, m), right = gl15_panel<T>(f, m, b);
            const T refined = left + right;
            const double scale = std::abs(refined);
            if (depth <= 0 || std::abs(refined - whole) <= std::max(tol, 64.0 * std::numeric_limits<double>::epsilon() * scale))
                return refined;
            return run(f, a, m, left, 0.5 * tol, depth - 1) + run(f, m, b, right, 0.5 * tol, depth - 1);
        }
    };
    return Local::run(f, a, b, gl15_panel<T>(f, a, b), abs_tol, max_depth);
}

}  // namespace volterra
