#include "volterra/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

#include "volterra/parallel.hpp"
#include "volterra/quadrature.hpp"

namespace volterra {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PointValue {
    double lower = 0;
    double upper = 0;
    double kappa = 0;  // threshold variable: |phi(z)| or |z|
};

using PointFn = std::function<PointValue(Complex z, double r)>;

struct Field {
    std::vector<double> radii;
    std::vector<Complex> units;
    std::vector<double> lower, upper, kappa;
    std::size_t n_angles = 0;
};

Field evaluate(const GridSpec& spec, const PointFn& fn) {
    const DiscGrid grid(spec);
    Field field;
    field.radii.assign(grid.radii().begin(), grid.radii().end());
    field.n_angles = grid.angle_count();
    for (std::size_t m = 0; m < field.n_angles; ++m) field.units.push_back(grid.unit(m));
    field.lower.resize(grid.size());
    field.upper.resize(grid.size());
    field.kappa.resize(grid.size());
    parallel_for(grid.ring_count(), [&](std::size_t k) {
        for (std::size_t m = 0; m < field.n_angles; ++m) {
            const PointValue pv = fn(grid.point(k, m), field.radii[k]);
            const std::size_t i = k * field.n_angles + m;
            if (!(pv.upper >= 0.0) || std::isnan(pv.lower))
                throw IntegrandError("non-finite symbol field value at r = " + std::to_string(field.radii[k]));
            field.lower[i] = pv.lower;
            field.upper[i] = pv.upper;
            field.kappa[i] = pv.kappa;
        }
    });
    return field;
}

std::vector<double> ring_maxima(const Field& field) {
    std::vector<double> maxima(field.radii.size(), 0.0);
    for (std::size_t k = 0; k < field.radii.size(); ++k)
        for (std::size_t m = 0; m < field.n_angles; ++m)
            maxima[k] = std::max(maxima[k], field.upper[k * field.n_angles + m]);
    return maxima;
}

bool field_grows(const Field& field, double* slope) {
    const auto maxima = ring_maxima(field);
    std::vector<double> scales;
    for (double r : field.radii) scales.push_back(-std::log1p(-r));
    return grows_without_bound(maxima, scales, slope);
}

// log of a nonnegative product given as a sum of logs, 0 when a factor vanishes.
double product(double factor, double log_rest) {
    if (factor == 0.0) return 0.0;
    return std::exp(std::log(factor) + log_rest);
}

PointFn symbol_point(const AnalyticFunction& g, const DiscSelfMap& phi, const SpaceSpec& X, const Weight& v,
                     bool with_one_minus, const GridSpec& spec) {
    const AnalyticFunction dg = compose_derivative(g, phi);
    const bool identity = phi.is_identity();
    const bool closed = X.closed_form_delta();
    const double a = closed ? X.delta_exponent() : 0.0;
    auto cache = std::make_shared<std::vector<DeltaNorm>>();
    if (identity && !closed) {
        const DiscGrid grid(spec);
        *cache = delta_norm_profile(X, grid.radii());
    }
    auto radii = std::make_shared<std::vector<double>>();
    if (identity && !closed) {
        const DiscGrid grid(spec);
        radii->assign(grid.radii().begin(), grid.radii().end());
    }
    return [=](Complex z, double r) {
        const Complex w = identity ? z : phi(z);
        const double kappa = identity ? r : std::abs(w);
        const double d = std::abs(dg.eval_unchecked(z));
        double log_base = v.log_value(r);
        if (with_one_minus) log_base += std::log1p(-r);
        if (closed) {
            const double s = product(d, log_base - a * std::log((1.0 - kappa) * (1.0 + kappa)));
            return PointValue{s, s, kappa};
        }
        DeltaNorm dn;
        const auto it = std::lower_bound(radii->begin(), radii->end(), r);
        if (identity && it != radii->end() && *it == r) dn = (*cache)[static_cast<std::size_t>(it - radii->begin())];
        else dn = delta_norm(X, w);
        return PointValue{product(d, log_base + std::log(dn.lower)), product(d, log_base + std::log(dn.upper)), kappa};
    };
}

// Grid supremum with one local refinement round around the grid argmax.
NormEstimate grid_sup(const Field& field, const PointFn& fn, const GridSpec& spec) {
    NormEstimate est;
    est.resolution = spec;
    double slope = 0;
    const std::size_t best = static_cast<std::size_t>(
        std::max_element(field.upper.begin(), field.upper.end()) - field.upper.begin());
    est.upper = field.upper[best];
    est.grid_sup = est.upper;
    est.lower = *std::max_element(field.lower.begin(), field.lower.end());
    const std::size_t k = best / field.n_angles, m = best % field.n_angles;
    est.argmax = field.radii[k] * field.units[m];
    if (field_grows(field, &slope)) {
        est.unbounded = true;
        est.upper = kInf;
        est.notes = "unbounded: boundary maxima grow with log-log slope " + std::to_string(slope);
        return est;
    }
    const double octave = static_cast<double>(k) / spec.rings_per_octave;
    const double dtheta = kTwoPi / static_cast<double>(field.n_angles);
    const double theta = std::arg(field.units[m]);
    for (double dk : {-0.5, 0.0, 0.5}) {
        const double u = octave + dk / spec.rings_per_octave;
        if (u < 0.0 || u > spec.depth) continue;
        const double r = 1.0 - std::exp2(-u);
        for (double dt : {-0.5, 0.0, 0.5}) {
            if (dk == 0.0 && dt == 0.0) continue;
            const Complex z = std::polar(r, theta + dt * dtheta);
            const PointValue pv = fn(z, r);
            if (pv.upper > est.upper) {
                est.upper = pv.upper;
                est.argmax = z;
            }
            est.lower = std::max(est.lower, pv.lower);
        }
    }
    return est;
}

// s_j = sup over points with kappa > 1 - 2^{-j}, j = 1, 2, ... while nonempty.
std::pair<std::vector<double>, std::vector<double>> thresholded_sups(const Field& field, int depth) {
    const auto levels = static_cast<std::size_t>(depth + 1);
    std::vector<double> upper(levels, -1.0), lower(levels, -1.0);
    for (std::size_t i = 0; i < field.kappa.size(); ++i) {
        const double kappa = field.kappa[i];
        int level = 0;
        while (level < depth && kappa > 1.0 - std::ldexp(1.0, -(level + 1))) ++level;
        upper[level] = std::max(upper[level], field.upper[i]);
        lower[level] = std::max(lower[level], field.lower[i]);
    }
    for (std::size_t j = levels - 1; j-- > 0;) {
        upper[j] = std::max(upper[j], upper[j + 1]);
        lower[j] = std::max(lower[j], lower[j + 1]);
    }
    std::vector<double> su, sl;
    for (std::size_t j = 1; j < levels && upper[j] >= 0.0; ++j) {
        su.push_back(upper[j]);
        sl.push_back(lower[j]);
    }
    return {su, sl};
}

NormEstimate boundary_limit(const Field& field, const GridSpec& spec, bool touches_boundary, double tol) {
    NormEstimate est;
    est.resolution = spec;
    if (!touches_boundary) {
        est.limit = LimitFit{LimitKind::zero, 0, 0, 0, 0, "empty limsup region: sup|phi| < 1"};
        est.compact = Decision::holds;
        est.notes = "self-map bounded away from the circle";
        return est;
    }
    double slope = 0;
    if (field_grows(field, &slope)) {
        est.limit = LimitFit{LimitKind::unbounded, kInf, kInf, kInf, kInf, "boundary maxima grow"};
        est.lower = est.upper = kInf;
        est.unbounded = true;
        est.compact = Decision::fails;
        est.notes = "unbounded: boundary maxima grow with log-log slope " + std::to_string(slope);
        return est;
    }
    auto [upper, lower] = thresholded_sups(field, spec.depth);
    est.sequence = upper;
    const LimitFit fit_upper = extrapolate_limit(upper);
    const LimitFit fit_lower = extrapolate_limit(lower);
    est.limit = fit_upper;
    est.upper = fit_upper.upper;
    est.lower = std::min(fit_lower.lower, est.upper);
    est.compact = fit_upper.vanishes(tol);
    est.notes = fit_upper.method;
    return est;
}

void require_normal(const Weight& v, const char* what) {
    const NormalityReport report = is_normal(v);
    if (!report.decidable) throw PreconditionError(std::string(what) + ": normality of the weight is numerically undecidable");
    if (!report.normal) throw PreconditionError(std::string(what) + " needs a normal weight: " + report.note);
}

}  // namespace

const char* to_string(EstimateKind kind) {
    switch (kind) {
        case EstimateKind::exact_equality: return "exact-equality";
        case EstimateKind::two_sided_equivalence: return "two-sided-equivalence";
        case EstimateKind::criterion_value: return "criterion-value";
    }
    return "criterion-value";
}

Complex apply(const AnalyticFunction& g, const DiscSelfMap& phi, const AnalyticFunction& f, Complex z, double abs_tol) {
    if (!(std::abs(z) < 1.0)) throw DomainError("apply needs |z| < 1");
    const Complex w = phi(z);
    const double rho = std::abs(w);
    if (rho == 0.0) return {};
    if (!(rho < 1.0)) throw DomainError("self-map value left the disc");
    const Complex unit = w / rho;
    const AnalyticFunction gprime = g.derivative();
    auto integrand = [&](double s) {
        const Complex xi = s * unit;
        return f.eval_unchecked(xi) * gprime.eval_unchecked(xi);
    };
    Complex total{};
    double lo = 0.0;
    while (lo < rho) {
        const double octaves = -std::log2(1.0 - lo);
        double next = 1.0 - std::exp2(-(std::floor(2.0 * octaves + 1e-9) + 1.0) / 2.0);
        if (!(next > lo)) next = rho;
        const double hi = std::min(rho, next);
        total += gl15_adaptive<Complex>(integrand, lo, hi, abs_tol);
        lo = hi;
    }
    return total * unit;
}

SymbolField symbol_field(const AnalyticFunction& g, const DiscSelfMap& phi, const SpaceSpec& X, const Weight& v,
                         const GridSpec& spec) {
    const PointFn fn = symbol_point(g, phi, X, v, false, spec);
    const Field field = evaluate(spec, fn);
    SymbolField out;
    out.spec = spec;
    out.radii = field.radii;
    for (const Complex& u : field.units) {
        double t = std::arg(u);
        if (t < 0) t += kTwoPi;
        out.angles.push_back(t);
    }
    out.closed_form = X.closed_form_delta();
    out.sigma_b_lower = field.lower;
    out.sigma_b_upper = field.upper;
    out.phi_abs = field.kappa;
    out.sigma_h_lower.resize(field.lower.size());
    out.sigma_h_upper.resize(field.upper.size());
    for (std::size_t k = 0; k < field.radii.size(); ++k) {
        const double factor = 1.0 - field.radii[k];
        for (std::size_t m = 0; m < field.n_angles; ++m) {
            const std::size_t i = k * field.n_angles + m;
            out.sigma_h_lower[i] = factor * field.lower[i];
            out.sigma_h_upper[i] = factor * field.upper[i];
        }
    }
    return out;
}

void write_csv(const SymbolField& field, std::ostream& out) {
    out << "r,theta,sigma_H,sigma_B,phi_abs,sigma_H_lower,sigma_B_lower\n";
    out.precision(17);
    for (std::size_t k = 0; k < field.radii.size(); ++k)
        for (std::size_t m = 0; m < field.angles.size(); ++m) {
            const std::size_t i = field.index(k, m);
            out << field.radii[k] << ',' << field.angles[m] << ',' << field.sigma_h_upper[i] << ','
                << field.sigma_b_upper[i] << ',' << field.phi_abs[i] << ',' << field.sigma_h_lower[i] << ','
                << field.sigma_b_lower[i] << '\n';
        }
}

NormEstimate norm_into_Bv(const AnalyticFunction& g, const DiscSelfMap& phi, const SpaceSpec& X, const Weight& v,
                          const EstimatorOptions& options) {
    const PointFn fn = symbol_point(g, phi, X, v, false, options.grid);
    NormEstimate est = grid_sup(evaluate(options.grid, fn), fn, options.grid);
    est.kind = X.closed_form_delta() ? EstimateKind::exact_equality : EstimateKind::two_sided_equivalence;
    if (est.kind == EstimateKind::exact_equality && !est.unbounded) est.lower = est.upper;
    if (est.notes.empty())
        est.notes = X.closed_form_delta() ? "grid supremum of the exact norm formula"
                                          : "grid supremum bracketed by evaluation-norm bounds";
    // The formula measures sup v|(T f)'| only. When phi(0) != 0 the B_v norm also
    // carries |T f(0)| <= int_0^{phi(0)} |g'| ||delta|| |dxi|, so the value becomes a bracket.
    const Complex w0 = phi(0.0);
    if (!est.unbounded && std::abs(w0) > 0.0) {
        const AnalyticFunction dg = g.derivative();
        const double offset = gl15_adaptive<double>(
            [&](double s) {
                const Complex xi = s * w0;
                return std::abs(dg(xi)) * std::abs(w0) * delta_norm(X, xi).upper;
            },
            0.0, 1.0, 1e-12);
        est.kind = EstimateKind::two_sided_equivalence;
        est.upper += offset;
        est.notes += "; phi(0) != 0: upper adds the point-evaluation term " + std::to_string(offset);
    }
    return est;
}

NormEstimate norm_into_Hv(const AnalyticFunction& g, const DiscSelfMap& phi, const SpaceSpec& X, const Weight& v,
                          const EstimatorOptions& options) {
    require_normal(v, "norm into H_v");
    const PointFn fn = symbol_point(g, phi, X, v, true, options.grid);
    NormEstimate est = grid_sup(evaluate(options.grid, fn), fn, options.grid);
    est.kind = EstimateKind::two_sided_equivalence;
    if (est.notes.empty()) est.notes = "criterion supremum; equivalence constants depend on the weight and are not quantified";
    return est;
}

NormEstimate essnorm_into_Hv(const AnalyticFunction& g, const DiscSelfMap& phi, const SpaceSpec& X, const Weight& v,
                             const EstimatorOptions& options) {
    require_normal(v, "essential norm into H_v");
    const PointFn fn = symbol_point(g, phi, X, v, true, options.grid);
    NormEstimate est = boundary_limit(evaluate(options.grid, fn), options.grid, phi.boundary_touching(), options.tol);
    est.kind = EstimateKind::two_sided_equivalence;
    return est;
}

NormEstimate essnorm_into_Bv(const AnalyticFunction& g, const DiscSelfMap& phi, const SpaceSpec& X, const Weight& v,
                             const EstimatorOptions& options) {
    const PointFn fn = symbol_point(g, phi, X, v, false, options.grid);
    NormEstimate est = boundary_limit(evaluate(options.grid, fn), options.grid, phi.boundary_touching(), options.tol);
    est.kind = EstimateKind::two_sided_equivalence;
    return est;
}

std::string corollary_tag(std::optional<double> bergman_alpha, TargetFamily target) {
    if (target == TargetFamily::Hv) return bergman_alpha ? "Cor3.7ii" : "Cor3.7i";
    return bergman_alpha ? "Cor3.7iv" : "Cor3.7iii";
}

NormEstimate corollary_specializations(const AnalyticFunction& g, const DiscSelfMap& phi, double p,
                                       std::optional<double> bergman_alpha, const Weight& v, TargetFamily target,
                                       const EstimatorOptions& options) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("corollary needs 1 <= p < inf");
    if (bergman_alpha && !(*bergman_alpha > -1.0)) throw DomainError("corollary needs alpha > -1");
    if (target == TargetFamily::Hv) require_normal(v, corollary_tag(bergman_alpha, target).c_str());
    const double exponent = bergman_alpha ? (2.0 + *bergman_alpha) / p : 1.0 / p;
    const AnalyticFunction dg = compose_derivative(g, phi);
    const bool identity = phi.is_identity();
    const bool with_one_minus = target == TargetFamily::Hv;
    const PointFn fn = [&](Complex z, double r) {
        const double kappa = identity ? r : std::abs(phi(z));
        double log_base = v.log_value(r) - exponent * std::log((1.0 - kappa) * (1.0 + kappa));
        if (with_one_minus) log_base += std::log1p(-r);
        const double s = product(std::abs(dg.eval_unchecked(z)), log_base);
        return PointValue{s, s, kappa};
    };
    NormEstimate est = boundary_limit(evaluate(options.grid, fn), options.grid, phi.boundary_touching(), options.tol);
    est.kind = EstimateKind::two_sided_equivalence;
    est.notes = corollary_tag(bergman_alpha, target) + ": " + est.notes;
    return est;
}

ClassicalBoundedness classical_boundedness(const AnalyticFunction& g, double alpha, const RadialOptions& options) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("classical criterion needs alpha >= 0");
    ClassicalBoundedness result;
    result.estimate.kind = EstimateKind::criterion_value;
    result.estimate.resolution = GridSpec{options.depth, 4, options.n_angles};
    const bool constant = g.is_symbolic_constant();
    if (alpha >= 1.0 || constant) {
        result.bounded = constant ? Decision::holds : Decision::fails;
        result.verdict = constant ? "bounded" : "unbounded";
        result.estimate.upper = constant ? 0.0 : kInf;
        result.estimate.unbounded = !constant;
        result.estimate.notes = constant ? "constant symbol: zero operator"
                                         : "alpha >= 1: only constant symbols give bounded operators";
        return result;
    }
    result.schlicht = schlicht_check(g, DiscGrid(GridSpec{options.depth, 4, options.n_angles}));
    const SupThetaResult sup = sup_theta_integral(g, alpha, 0.0, options);
    result.sup = sup;
    result.estimate.argmax = std::polar(1.0, sup.argmax_theta);
    switch (sup.growth) {
        case Growth::convergent:
            result.bounded = Decision::holds;
            result.verdict = "bounded";
            result.estimate.upper = sup.sup_limit;
            result.estimate.notes = "radial criterion value with extrapolated boundary remainder";
            break;
        case Growth::divergent:
            result.bounded = Decision::fails;
            result.verdict = "unbounded";
            result.estimate.upper = kInf;
            result.estimate.unbounded = true;
            result.estimate.notes = "radial integral diverges along the witness angle";
            break;
        case Growth::undecided:
            result.verdict = "undecided";
            result.estimate.upper = kInf;
            result.estimate.notes = "radial growth undecided at this resolution; value to r_max is " + std::to_string(sup.sup);
            break;
    }
    return result;
}

ClassicalCompactness classical_compactness(const AnalyticFunction& g, double alpha, const RadialOptions& options,
                                           double tol) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("classical criterion needs alpha >= 0");
    ClassicalCompactness result;
    if (g.is_symbolic_constant()) {
        result.compact = Decision::holds;
        result.verdict = "compact-consistent";
        result.profile = tail_sup_profile(g, std::min(alpha, 0.999), options);
        return result;
    }
    if (alpha >= 1.0) {
        result.compact = Decision::fails;
        result.verdict = "noncompact-consistent";
        return result;
    }
    result.schlicht = schlicht_check(g, DiscGrid(GridSpec{options.depth, 4, options.n_angles}));
    result.profile = tail_sup_profile(g, alpha, options);
    result.compact = result.profile->vanishes(tol);
    result.verdict = result.profile->verdict();
    return result;
}

LittleSpaceResult little_space_transfer(const AnalyticFunction& g, const DiscSelfMap& phi, const Weight& v,
                                        TargetFamily flavor, const EstimatorOptions& options) {
    const AnalyticFunction dg = compose_derivative(g, phi);
    const bool with_one_minus = flavor == TargetFamily::Hv;
    const PointFn fn = [&](Complex z, double r) {
        double log_base = v.log_value(r);
        if (with_one_minus) log_base += std::log1p(-r);
        const double s = product(std::abs(dg.eval_unchecked(z)), log_base);
        return PointValue{s, s, r};
    };
    const NormEstimate est = boundary_limit(evaluate(options.grid, fn), options.grid, true, options.tol);
    LittleSpaceResult result;
    result.limit = *est.limit;
    result.sequence = est.sequence;
    result.sup_tail = est.sequence.empty() ? (est.unbounded ? kInf : 0.0) : est.sequence.back();
    result.membership = est.compact;
    return result;
}

Condition9Result cor312_condition9(const AnalyticFunction& g, const DiscSelfMap& phi, const Weight& v,
                                   const Weight& w, const EstimatorOptions& options) {
    require_normal(v, "vanishing condition");
    require_normal(w, "vanishing condition");
    Condition9Result result;
    const DiscGrid grid(options.grid);
    std::vector<double> ratios;
    for (double r : grid.radii()) ratios.push_back(associated_weight(v, r) / v(r));
    result.equivalence_ratio = *std::max_element(ratios.begin(), ratios.end());
    const double late = ratios[ratios.size() * 3 / 4];
    if (!(result.equivalence_ratio < 1e3) || ratios.back() > 1.05 * late)
        throw PreconditionError("vanishing condition needs v equivalent to its associated weight; ratio reached " +
                                std::to_string(result.equivalence_ratio));

    const AnalyticFunction dg = compose_derivative(g, phi);
    const bool identity = phi.is_identity();
    const PointFn fn = [&](Complex z, double r) {
        const double kappa = identity ? r : std::abs(phi(z));
        const double log_base = std::log1p(-r) + w.log_value(r) - v.log_value(kappa);
        const double s = product(std::abs(dg.eval_unchecked(z)), log_base);
        return PointValue{s, s, kappa};
    };
    const NormEstimate est = boundary_limit(evaluate(options.grid, fn), options.grid, phi.boundary_touching(), options.tol);
    result.limit = *est.limit;
    result.sequence = est.sequence;
    result.holds = est.compact;
    result.verdict = result.holds == Decision::holds ? "all nine equivalent statements hold"
                     : result.holds == Decision::fails ? "vanishing condition fails"
                                                       : "undecided";
    return result;
}

}  // namespace volterra
