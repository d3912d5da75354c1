#pragma once

// Radial integrals  int |g'(r e^{i theta})| (1 - r^2)^{-alpha} dr  toward the
// boundary, their suprema over angles, tails and divergence classification.

#include <iosfwd>
#include <string>
#include <vector>

#include "volterra/analytic.hpp"
#include "volterra/limits.hpp"

namespace volterra {

struct RadialOptions {
    int depth = 30;           // r_max = 1 - 2^{-depth}
    int n_angles = 512;
    double abs_tol = 1e-9;    // per panel
    int bisection_rounds = 3;
};

/// Adaptive GL15 of r -> |g'(r e^{i theta})| (1 - r^2)^{-alpha} on [t0, t1],
/// with half-octave panels clustered at the boundary.
double radial_integral(const AnalyticFunction& g, double alpha, double theta, double t0, double t1,
                       double abs_tol = 1e-9);

/// Integral of a ray split at the dyadic radii 1 - 2^{-j}.
struct RayProfile {
    double theta = 0;
    double t = 0;                     // lower limit
    std::vector<double> increments;   // pieces between consecutive cutoffs up to r_max
    std::vector<double> cutoffs;      // right end of each piece
    double value = 0;                 // integral over [t, r_max]
    double limit = 0;                 // value plus geometric remainder (+inf if divergent)
    GrowthFit fit;
};

/// `gprime` is g' (already differentiated).
RayProfile ray_profile(const AnalyticFunction& gprime, double alpha, double theta, double t,
                       const RadialOptions& options = {});

struct SupThetaResult {
    double sup = 0;         // sup over angles of the integral over [t, r_max]
    double sup_limit = 0;   // same with the extrapolated remainder (+inf if divergent)
    double argmax_theta = 0;
    Growth growth = Growth::undecided;  // classification of the maximizing ray
    double growth_slope = 0;
    int r_max_depth = 30;
};

/// Angle-grid maximum refined by local bisection and a golden-section polish.
SupThetaResult sup_theta_integral(const AnalyticFunction& g, double alpha, double t,
                                  const RadialOptions& options = {});

struct RadialProfile {
    double alpha = 0;
    double r_max = 0;
    std::vector<double> angles;
    std::vector<double> values;               // per angle, integral over [0, r_max]
    std::vector<double> cutoffs;              // t_j = 1 - 2^{-j}, j = 1..depth
    std::vector<std::vector<double>> tails;   // tails[angle][j-1] = integral over [t_j, r_max]
    std::vector<Growth> classification;       // per angle
    std::vector<double> growth_slopes;        // per angle
    std::vector<double> sup_tails;            // sup over angles (refined) of tails
    std::vector<double> sup_tails_limit;      // same with extrapolated remainders
    double witness_theta = 0;
    Growth witness_growth = Growth::undecided;
    LimitFit tail_limit;

    /// "compact-consistent", "noncompact-consistent" or "undecided".
    std::string verdict() const;
    /// The tail limit is zero.
    Decision vanishes(double tol = 1e-6) const;
};

RadialProfile tail_sup_profile(const AnalyticFunction& g, double alpha, const RadialOptions& options = {});

/// Columnar export: theta, value, growth, tail_1..tail_J (header row, LF).
void write_csv(const RadialProfile& profile, std::ostream& out);

struct MembershipResult {
    Decision member = Decision::undecided;
    std::string verdict;     // e.g. "in-BRV", "not-in-BRV", "undecided"
    double witness_theta = 0;
    double value = 0;
};

MembershipResult brv_membership(const AnalyticFunction& g, const RadialOptions& options = {});
MembershipResult brv0_membership(const AnalyticFunction& g, const RadialOptions& options = {}, double tol = 1e-6);

}  // namespace volterra
