#pragma once

// Brute-force lower bounds for operator norms: numeric space norms, kernel
// test functions and random polynomials.

#include <cstdint>
#include <string>
#include <vector>

#include "volterra/estimators.hpp"

namespace volterra {

/// Numeric norm of f in X on the polar grid; +inf when grid values keep growing.
///  Hardy: sup over rings of the 1024-angle trapezoid p-mean.
///  Bergman: radial GL15 on ring panels times the 1024-angle mean.
///  Hv/Bv/Hinf: grid suprema.
double space_norm(const AnalyticFunction& f, const SpaceSpec& X, const GridSpec& grid = {});

struct OracleReport {
    double lower_bound = 0;
    std::size_t n_trials = 0;        // random polynomials tried
    std::size_t n_structured = 0;    // kernel-type test functions tried
    std::string best_witness;
    double consistency = 0;          // lower_bound / estimator upper (0 when not applicable)
};

/// max ||T_g^phi f||_Y / ||f||_X over structured kernels and n_trials random
/// polynomials of degree <= 64. Denominators are upper bounds for ||f||_X and
/// numerators are grid values, so the result is a lower bound for the norm.
/// Deterministic for a fixed seed; trial t draws from its own stream.
OracleReport mc_norm_lower_bound(const AnalyticFunction& g, const DiscSelfMap& phi, const SpaceSpec& X,
                                 const SpaceSpec& Y, std::size_t n_trials, std::uint64_t seed,
                                 const GridSpec& grid = {});

/// Estimator matched to the pair (X, Y): the exact formula for Bloch-type
/// targets, the criterion supremum for growth targets, and the radial
/// criterion for H_{v_alpha} -> H^inf with the identity map.
struct PairEstimate {
    NormEstimate estimate;
    std::string tag;       // e.g. "Thm3.3ii"
    bool rigorous = false; // upper bracket is a genuine upper bound for the norm
};

PairEstimate estimate_pair(const AnalyticFunction& g, const DiscSelfMap& phi, const SpaceSpec& X, const SpaceSpec& Y,
                           const GridSpec& grid = {});

struct SweepCase {
    std::string name;
    AnalyticFunction g;
    DiscSelfMap phi;
    SpaceSpec X;
    SpaceSpec Y;
};

struct SweepEntry {
    std::string name;
    std::string tag;
    double estimator_lower = 0;
    double estimator_upper = 0;
    EstimateKind kind = EstimateKind::criterion_value;
    bool rigorous = false;
    OracleReport oracle;
    bool hard_failure = false;
    double ratio = 0;  // oracle / estimator upper (informative)
};

struct SweepReport {
    std::vector<SweepEntry> entries;
    std::size_t hard_failures = 0;
};

SweepReport consistency_sweep(const std::vector<SweepCase>& cases, std::size_t n_trials, std::uint64_t seed,
                              const GridSpec& grid = {});

/// Symbols {z, z^2/2, (1-z)^{1/2}} x maps {identity, z/2} x pairs
/// {Hardy(2) -> Bv(v_1/2), Bergman(2,0) -> Bv(v_3/2)}.
std::vector<SweepCase> default_sweep_cases();

}  // namespace volterra
