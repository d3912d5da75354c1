#pragma once

// Boundary-limit extrapolation from finite sequences. Every verdict is
// three-valued: a machine can only extrapolate limits as |z| -> 1.

#include <span>
#include <string>

#include "volterra/common.hpp"

namespace volterra {

enum class LimitKind { zero, positive, unbounded, undecided };

const char* to_string(LimitKind kind);

struct LimitFit {
    LimitKind kind = LimitKind::undecided;
    double estimate = 0;  // extrapolated limit (+inf when unbounded)
    double lower = 0;     // bracket for the limit
    double upper = 0;
    double last = 0;      // last sequence value
    std::string method;

    /// Whether the limit is <= tol.
    Decision vanishes(double tol) const;
};

/// Limit of a nonincreasing sequence of thresholded suprema s_1 >= s_2 >= ...
///  - zero when all values vanish, when s_last < 1e-4 s_first while still
///    decreasing, or when the last half decays geometrically (ratio <= 0.9);
///  - positive when the last five values agree within 2%; the estimate
///    extrapolates the differences geometrically;
///  - undecided otherwise.
LimitFit extrapolate_limit(std::span<const double> seq);

/// Unbounded-growth test for boundary maxima M_k sampled at scales
/// x_k = log(1/(1 - r_k)): the log-log slope over the last quarter exceeds
/// 1e-3, M is still increasing, and the slope does not collapse between the
/// two halves of that quarter. Returns the slope through `slope`.
bool grows_without_bound(std::span<const double> maxima, std::span<const double> scales, double* slope = nullptr);

enum class Growth { convergent, divergent, undecided };

const char* to_string(Growth growth);

struct GrowthFit {
    Growth growth = Growth::undecided;
    double slope = 0;      // least-squares slope of log2 d_j over the last half
    double remainder = 0;  // geometric estimate of sum_{j > J} d_j (+inf if divergent)
};

/// Classifies the partial sums of nonnegative octave increments d_1..d_J.
GrowthFit classify_increments(std::span<const double> increments);

/// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y, double* r_squared = nullptr);

}  // namespace volterra
