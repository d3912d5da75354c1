#pragma once

// Norms, essential norms and boundedness/compactness verdicts for
// T_g^phi f(z) = int_0^{phi(z)} f(xi) g'(xi) dxi.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "volterra/analytic.hpp"
#include "volterra/functionals.hpp"
#include "volterra/limits.hpp"
#include "volterra/radial.hpp"
#include "volterra/space.hpp"

namespace volterra {

struct EstimatorOptions {
    GridSpec grid{};
    double tol = 1e-6;  // compactness threshold on extrapolated limits
};

/// T_g^phi f (z) by adaptive Gauss-Legendre along the segment [0, phi(z)].
Complex apply(const AnalyticFunction& g, const DiscSelfMap& phi, const AnalyticFunction& f, Complex z,
              double abs_tol = 1e-12);

enum class EstimateKind { exact_equality, two_sided_equivalence, criterion_value };

const char* to_string(EstimateKind kind);

struct NormEstimate {
    double lower = 0;
    double upper = 0;
    EstimateKind kind = EstimateKind::criterion_value;
    GridSpec resolution{};
    std::string notes;
    bool unbounded = false;
    double grid_sup = 0;  // grid maximum before local refinement
    Complex argmax{};
    // Boundary-limit data (essential norms and limsup tests).
    std::vector<double> sequence;  // thresholded sups s_j, upper bracket
    std::optional<LimitFit> limit;
    Decision compact = Decision::undecided;

    double value() const { return upper; }
};

/// Pointwise data of the norm formulas on the polar grid (ring-major).
struct SymbolField {
    GridSpec spec{};
    std::vector<double> radii;
    std::vector<double> angles;
    std::vector<double> sigma_h_lower, sigma_h_upper;  // (1-|z|) v(z) |(g∘phi)'(z)| ||delta_phi(z)||
    std::vector<double> sigma_b_lower, sigma_b_upper;  // v(z) |(g∘phi)'(z)| ||delta_phi(z)||
    std::vector<double> phi_abs;
    bool closed_form = true;

    std::size_t index(std::size_t ring, std::size_t angle) const { return ring * angles.size() + angle; }
};

SymbolField symbol_field(const AnalyticFunction& g, const DiscSelfMap& phi, const SpaceSpec& X, const Weight& v,
                         const GridSpec& grid = {});

/// Columns r, theta, sigma_H, sigma_B, phi_abs, sigma_H_lower, sigma_B_lower.
void write_csv(const SymbolField& field, std::ostream& out);

/// sup_z v(z) |(g∘phi)'(z)| ||delta_phi(z)||_X (exact formula; any weight).
NormEstimate norm_into_Bv(const AnalyticFunction& g, const DiscSelfMap& phi, const SpaceSpec& X, const Weight& v,
                          const EstimatorOptions& options = {});
/// sup_z (1-|z|) v(z) |(g∘phi)'(z)| ||delta_phi(z)||_X; requires a normal weight.
NormEstimate norm_into_Hv(const AnalyticFunction& g, const DiscSelfMap& phi, const SpaceSpec& X, const Weight& v,
                          const EstimatorOptions& options = {});
NormEstimate essnorm_into_Hv(const AnalyticFunction& g, const DiscSelfMap& phi, const SpaceSpec& X, const Weight& v,
                             const EstimatorOptions& options = {});
NormEstimate essnorm_into_Bv(const AnalyticFunction& g, const DiscSelfMap& phi, const SpaceSpec& X, const Weight& v,
                             const EstimatorOptions& options = {});

enum class TargetFamily { Hv, Bv };

/// Essential-norm limsups with the closed-form evaluation norms of H^p
/// (bergman_alpha empty) or A^p_alpha substituted.
NormEstimate corollary_specializations(const AnalyticFunction& g, const DiscSelfMap& phi, double p,
                                       std::optional<double> bergman_alpha, const Weight& v, TargetFamily target,
                                       const EstimatorOptions& options = {});
/// Tag such as "Cor3.7iii".
std::string corollary_tag(std::optional<double> bergman_alpha, TargetFamily target);

struct ClassicalBoundedness {
    NormEstimate estimate;         // upper = criterion value
    Decision bounded = Decision::undecided;
    std::string verdict;           // "bounded", "unbounded", "undecided"
    std::optional<SupThetaResult> sup;
    std::optional<SchlichtReport> schlicht;
};

ClassicalBoundedness classical_boundedness(const AnalyticFunction& g, double alpha, const RadialOptions& options = {});

struct ClassicalCompactness {
    Decision compact = Decision::undecided;
    std::string verdict;           // "compact-consistent", "noncompact-consistent", "undecided"
    std::optional<RadialProfile> profile;
    std::optional<SchlichtReport> schlicht;
};

ClassicalCompactness classical_compactness(const AnalyticFunction& g, double alpha, const RadialOptions& options = {},
                                           double tol = 1e-6);

struct LittleSpaceResult {
    Decision membership = Decision::undecided;
    double sup_tail = 0;
    LimitFit limit;
    std::vector<double> sequence;
};

/// g∘phi in B_v^0 (flavor B) or, via w = (1-|z|)v, in H_v^0 (flavor H).
LittleSpaceResult little_space_transfer(const AnalyticFunction& g, const DiscSelfMap& phi, const Weight& v,
                                        TargetFamily flavor, const EstimatorOptions& options = {});

struct Condition9Result {
    LimitFit limit;
    Decision holds = Decision::undecided;
    std::vector<double> sequence;
    double equivalence_ratio = 1;  // max over the grid of associated(v)/v
    std::string verdict;
};

/// lim_{|phi(z)|->1} (1-|z|) |(g∘phi)'(z)| w(z) / v(phi(z)) = 0.
Condition9Result cor312_condition9(const AnalyticFunction& g, const DiscSelfMap& phi, const Weight& v,
                                   const Weight& w, const EstimatorOptions& options = {});

}  // namespace volterra
