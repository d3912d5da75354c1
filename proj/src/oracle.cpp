#include "volterra/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "volterra/parallel.hpp"
#include "volterra/quadrature.hpp"

namespace volterra {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct TestFunction {
    std::string description;
    double norm_upper = 1;
    std::vector<Complex> coefficients;  // polynomial when non-empty
    AnalyticFunction f;

    Complex operator()(Complex z) const {
        if (coefficients.empty()) return f.eval_unchecked(z);
        Complex acc{};
        for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * z + *it;
        return acc;
    }
};

// Quadrature rule for integral_0^w h(xi) g'(xi) dxi = sum c_i h(xi_i).
struct SegmentRule {
    std::vector<Complex> nodes;
    std::vector<Complex> weights;

    template <class F>
    Complex apply(const F& h) const {
        Complex sum{};
        for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * h(nodes[i]);
        return sum;
    }
};

void append_panel(SegmentRule& rule, const AnalyticFunction& gprime, Complex unit, double a, double b) {
    const auto& gl = gauss_legendre15();
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const Complex xi = (mid + half * gl.nodes[i]) * unit;
        rule.nodes.push_back(xi);
        rule.weights.push_back(half * gl.weights[i] * gprime.eval_unchecked(xi) * unit);
    }
}

// Half-octave panels on [0, |w|].
SegmentRule segment_rule(const AnalyticFunction& gprime, Complex w) {
    SegmentRule rule;
    const double rho = std::abs(w);
    if (rho == 0.0) return rule;
    const Complex unit = w / rho;
    double lo = 0.0;
    while (lo < rho) {
        const double octaves = -std::log2(1.0 - lo);
        double next = 1.0 - std::exp2(-(std::floor(2.0 * octaves + 1e-9) + 1.0) / 2.0);
        if (!(next > lo)) next = rho;
        const double hi = std::min(rho, next);
        append_panel(rule, gprime, unit, lo, hi);
        lo = hi;
    }
    return rule;
}

// ||T_g^phi f||_Y sampled on a subgrid.
class TargetNorm {
public:
    TargetNorm(const AnalyticFunction& g, const DiscSelfMap& phi, const SpaceSpec& Y, const GridSpec& spec)
        : bloch_(Y.is_bloch_type()) {
        const DiscGrid grid(spec);
        const AnalyticFunction gprime = g.derivative();
        auto log_weight = [&](double r) { return Y.kind() == SpaceKind::hinf ? 0.0 : Y.weight().log_value(r); };
        if (Y.kind() != SpaceKind::hinf && !Y.is_growth_type() && !bloch_)
            throw PreconditionError("oracle targets are Hinf, H_v or B_v spaces; got " + Y.tag());
        if (bloch_) {
            const AnalyticFunction dg = compose_derivative(g, phi);
            origin_ = segment_rule(gprime, phi(Complex{}));
            for (std::size_t k = 0; k < grid.ring_count(); k += 2)
                for (std::size_t m = 0; m < grid.angle_count(); m += 8) {
                    const Complex z = grid.point(k, m);
                    const double d = std::abs(dg.eval_unchecked(z));
                    if (d == 0.0) continue;
                    points_.push_back(phi(z));
                    factors_.push_back(std::exp(std::log(d) + log_weight(grid.radii()[k])));
                }
            return;
        }
        if (phi.is_identity()) {
            for (std::size_t m = 0; m < grid.angle_count(); m += 32) {
                Ray ray;
                const Complex unit = grid.unit(m);
                for (std::size_t k = 0; k + 1 < grid.ring_count(); ++k) {
                    append_panel(ray.rule, gprime, unit, grid.radii()[k], grid.radii()[k + 1]);
                    ray.weights.push_back(std::exp(log_weight(grid.radii()[k + 1])));
                }
                rays_.push_back(std::move(ray));
            }
            return;
        }
        for (std::size_t k = 0; k < grid.ring_count(); k += 4)
            for (std::size_t m = 0; m < grid.angle_count(); m += 32) {
                segments_.push_back(segment_rule(gprime, phi(grid.point(k, m))));
                factors_.push_back(std::exp(log_weight(grid.radii()[k])));
            }
    }

    bool bloch() const { return bloch_; }

    double operator()(const TestFunction& f) const {
        if (bloch_) {
            double best = 0.0;
            for (std::size_t i = 0; i < points_.size(); ++i) best = std::max(best, factors_[i] * std::abs(f(points_[i])));
            return std::abs(origin_.apply(f)) + best;
        }
        double best = 0.0;
        for (const Ray& ray : rays_) {
            Complex cumulative{};
            constexpr std::size_t per_panel = 15;
            for (std::size_t p = 0; p < ray.weights.size(); ++p) {
                for (std::size_t i = p * per_panel; i < (p + 1) * per_panel; ++i)
                    cumulative += ray.rule.weights[i] * f(ray.rule.nodes[i]);
                best = std::max(best, ray.weights[p] * std::abs(cumulative));
            }
        }
        for (std::size_t i = 0; i < segments_.size(); ++i)
            best = std::max(best, factors_[i] * std::abs(segments_[i].apply(f)));
        return best;
    }

private:
    struct Ray {
        SegmentRule rule;
        std::vector<double> weights;  // target weight at the end of each panel
    };
    bool bloch_;
    SegmentRule origin_;
    std::vector<Complex> points_;
    std::vector<double> factors_;
    std::vector<Ray> rays_;
    std::vector<SegmentRule> segments_;
};

std::string describe_point(const char* family, Complex w) {
    std::ostringstream out;
    out.precision(10);
    out << family << " w=" << w.real() << (w.imag() < 0 ? "" : "+") << w.imag() << "i";
    return out.str();
}

TestFunction analytic_test(std::string description, AnalyticFunction f, double norm) {
    TestFunction t;
    t.description = std::move(description);
    t.f = std::move(f);
    t.norm_upper = norm;
    return t;
}

// (1 - conj(w) z)^{-2a} (1 - |w|^2)^a, the normalized kernel.
AnalyticFunction normalized_kernel(Complex w, double a) {
    return AnalyticFunction::constant(std::pow((1.0 - std::abs(w)) * (1.0 + std::abs(w)), a)) *
           AnalyticFunction::affine(1.0, -std::conj(w)).pow(-2.0 * a);
}

std::vector<TestFunction> structured_family(const SpaceSpec& X, const GridSpec& spec, bool coarse) {
    std::vector<TestFunction> out;
    const DiscGrid grid(spec);
    const std::size_t angle_stride = coarse ? 32 : 16;
    const bool standard = X.has_weight() && X.weight().standard_exponent().has_value();

    double constant_norm = 1.0;
    if (X.is_growth_type()) constant_norm = X.weight()(0.0);
    out.push_back(analytic_test("constant 1", AnalyticFunction::constant(1.0), constant_norm));

    if (X.has_weight() && !standard) {
        const Weight& v = X.weight();
        for (const auto& m : v.monomial_table()) {
            if (m.degree > 4096) break;
            const int n = static_cast<int>(m.degree);
            std::ostringstream name;
            name << (X.is_bloch_type() ? "monomial primitive n=" : "monomial n=") << n;
            if (X.is_bloch_type())
                out.push_back(analytic_test(name.str(),
                                            AnalyticFunction::constant(std::exp(-m.log_sup) / (n + 1.0)) *
                                                AnalyticFunction::monomial(n + 1),
                                            1.0));
            else
                out.push_back(analytic_test(name.str(),
                                            AnalyticFunction::constant(std::exp(-m.log_sup)) * AnalyticFunction::monomial(n),
                                            1.0));
        }
        return out;
    }

    for (std::size_t k = 0; k < grid.ring_count(); k += 4)
        for (std::size_t m = 0; m < grid.angle_count(); m += angle_stride) {
            const Complex w = grid.point(k, m);
            if (k == 0 && m > 0) continue;
            switch (X.kind()) {
                case SpaceKind::hardy:
                case SpaceKind::bergman:
                    out.push_back(analytic_test(describe_point("normalized kernel", w),
                                                normalized_kernel(w, X.delta_exponent()), 1.0));
                    break;
                case SpaceKind::hinf:
                    if (k > 0)
                        out.push_back(analytic_test(describe_point("Mobius", w), AnalyticFunction::mobius(w), 1.0));
                    break;
                case SpaceKind::hv_inf:
                case SpaceKind::hv_0: {
                    const double a = *X.weight().standard_exponent();
                    out.push_back(analytic_test(describe_point("normalized kernel", w), normalized_kernel(w, a), 1.0));
                    const Complex c = std::conj(w) * std::conj(w);
                    out.push_back(analytic_test(
                        describe_point("symmetric kernel", w),
                        (AnalyticFunction::constant(1.0) - AnalyticFunction::constant(c) * AnalyticFunction::monomial(2)).pow(-a),
                        1.0));
                    break;
                }
                case SpaceKind::bv_inf:
                case SpaceKind::bv_0: {
                    if (k == 0) break;
                    const double a = *X.weight().standard_exponent();
                    const Complex wb = std::conj(w);
                    const double scale = std::pow((1.0 - std::abs(w)) * (1.0 + std::abs(w)), a);
                    const AnalyticFunction base = AnalyticFunction::affine(1.0, -wb);
                    AnalyticFunction primitive;
                    if (std::abs(2.0 * a - 1.0) < 1e-14)
                        primitive = AnalyticFunction::constant(-scale / wb) * base.log();
                    else
                        primitive = AnalyticFunction::constant(scale / (wb * (2.0 * a - 1.0))) *
                                    (base.pow(1.0 - 2.0 * a) - AnalyticFunction::constant(1.0));
                    out.push_back(analytic_test(describe_point("kernel primitive", w), primitive, 1.0));
                    break;
                }
            }
        }
    return out;
}

double poly_norm_upper(const std::vector<Complex>& c, const SpaceSpec& X) {
    const std::size_t d = c.size() - 1;
    switch (X.kind()) {
        case SpaceKind::hardy: {
            if (X.p() == 2.0) {
                double s = 0;
                for (const Complex& a : c) s += std::norm(a);
                return std::sqrt(s);
            }
            double s = 0;
            for (const Complex& a : c) s += std::abs(a);
            return s;
        }
        case SpaceKind::bergman: {
            const double alpha = X.alpha(), p = X.p();
            if (p == 2.0) {
                double s = 0;
                for (std::size_t n = 0; n <= d; ++n)
                    s += std::norm(c[n]) *
                         std::exp(std::lgamma(n + 1.0) + std::lgamma(alpha + 2.0) - std::lgamma(n + alpha + 2.0));
                return std::sqrt(s);
            }
            double s = 0;
            for (std::size_t n = 0; n <= d; ++n) {
                const double log_beta = std::lgamma(n * p / 2.0 + 1.0) + std::lgamma(alpha + 1.0) -
                                        std::lgamma(n * p / 2.0 + alpha + 2.0);
                s += std::abs(c[n]) * std::exp((std::log(alpha + 1.0) + log_beta) / p);
            }
            return s;
        }
        case SpaceKind::hinf: {
            // Bernstein: max on the circle <= sampled max / (1 - pi d / N).
            constexpr int N = 4096;
            double best = 0;
            for (int k = 0; k < N; ++k) {
                const Complex z = std::polar(1.0, kTwoPi * k / N);
                Complex acc{};
                for (std::size_t n = d + 1; n-- > 0;) acc = acc * z + c[n];
                best = std::max(best, std::abs(acc));
            }
            return best / (1.0 - kPi * static_cast<double>(d) / N);
        }
        case SpaceKind::hv_inf:
        case SpaceKind::hv_0: {
            double s = 0;
            for (std::size_t n = 0; n <= d; ++n) s += std::abs(c[n]) * std::exp(X.weight().monomial_log_sup(double(n)));
            return s;
        }
        case SpaceKind::bv_inf:
        case SpaceKind::bv_0: {
            double s = std::abs(c[0]);
            for (std::size_t n = 1; n <= d; ++n)
                s += n * std::abs(c[n]) * std::exp(X.weight().monomial_log_sup(double(n - 1)));
            return s;
        }
    }
    return kInf;
}

TestFunction random_polynomial(std::uint64_t seed, std::size_t trial, const SpaceSpec& X) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<int> degree(1, 64);
    std::normal_distribution<double> normal;
    TestFunction t;
    const int d = degree(rng);
    t.coefficients.resize(static_cast<std::size_t>(d) + 1);
    for (auto& a : t.coefficients) a = Complex(normal(rng), normal(rng));
    t.norm_upper = poly_norm_upper(t.coefficients, X);
    std::ostringstream name;
    name << "random polynomial trial=" << trial << " degree=" << d;
    t.description = name.str();
    return t;
}

}  // namespace

double space_norm(const AnalyticFunction& f, const SpaceSpec& X, const GridSpec& spec) {
    const DiscGrid grid(spec);
    std::vector<double> maxima(grid.ring_count(), 0.0), scales;
    for (double r : grid.radii()) scales.push_back(-std::log1p(-r));
    auto finish = [&](double value) {
        return grows_without_bound(maxima, scales) ? kInf : value;
    };
    constexpr int n_circle = 1024;
    auto circle_mean = [&](double r, double p) {
        double s = 0;
        for (int k = 0; k < n_circle; ++k) s += std::pow(std::abs(f.eval_unchecked(std::polar(r, kTwoPi * k / n_circle))), p);
        return s / n_circle;
    };
    switch (X.kind()) {
        case SpaceKind::hardy: {
            parallel_for(grid.ring_count(), [&](std::size_t k) {
                maxima[k] = std::pow(circle_mean(grid.radii()[k], X.p()), 1.0 / X.p());
            });
            return finish(*std::max_element(maxima.begin(), maxima.end()));
        }
        case SpaceKind::bergman: {
            const double p = X.p(), alpha = X.alpha();
            std::vector<double> panel(grid.ring_count() - 1, 0.0);
            parallel_for(panel.size(), [&](std::size_t k) {
                auto integrand = [&](double r) {
                    return circle_mean(r, p) * std::pow((1.0 - r) * (1.0 + r), alpha) * 2.0 * r;
                };
                panel[k] = gl15_panel<double>(integrand, grid.radii()[k], grid.radii()[k + 1]);
            });
            double total = 0;
            for (std::size_t k = 0; k < panel.size(); ++k) {
                total += panel[k];
                maxima[k + 1] = total;
            }
            return std::pow((alpha + 1.0) * total, 1.0 / p);
        }
        case SpaceKind::hinf:
        case SpaceKind::hv_inf:
        case SpaceKind::hv_0:
        case SpaceKind::bv_inf:
        case SpaceKind::bv_0: {
            const bool bloch = X.is_bloch_type();
            const AnalyticFunction h = bloch ? f.derivative() : f;
            parallel_for(grid.ring_count(), [&](std::size_t k) {
                const double r = grid.radii()[k];
                const double w = X.kind() == SpaceKind::hinf ? 1.0 : X.weight()(r);
                double best = 0;
                for (std::size_t m = 0; m < grid.angle_count(); ++m)
                    best = std::max(best, std::abs(h.eval_unchecked(grid.point(k, m))));
                maxima[k] = w * best;
            });
            const double sup = *std::max_element(maxima.begin(), maxima.end());
            return finish(bloch ? std::abs(f.eval_unchecked(0.0)) + sup : sup);
        }
    }
    return kInf;
}

OracleReport mc_norm_lower_bound(const AnalyticFunction& g, const DiscSelfMap& phi, const SpaceSpec& X,
                                 const SpaceSpec& Y, std::size_t n_trials, std::uint64_t seed, const GridSpec& spec) {
    OracleReport report;
    report.n_trials = n_trials;
    if (g.is_symbolic_constant()) {
        report.best_witness = "zero operator";
        return report;
    }
    const TargetNorm target(g, phi, Y, spec);
    const auto structured = structured_family(X, spec, !target.bloch());
    report.n_structured = structured.size();

    std::vector<double> ratios(structured.size() + n_trials, 0.0);
    std::vector<std::string> names(ratios.size());
    parallel_for(ratios.size(), [&](std::size_t i) {
        if (i < structured.size()) {
            const TestFunction& t = structured[i];
            ratios[i] = target(t) / t.norm_upper;
            names[i] = t.description;
        } else {
            const TestFunction t = random_polynomial(seed, i - structured.size(), X);
            ratios[i] = target(t) / t.norm_upper;
            names[i] = t.description;
        }
        if (!std::isfinite(ratios[i])) ratios[i] = 0.0;
    });
    const auto best = std::max_element(ratios.begin(), ratios.end());
    report.lower_bound = *best;
    report.best_witness = names[static_cast<std::size_t>(best - ratios.begin())];
    return report;
}

PairEstimate estimate_pair(const AnalyticFunction& g, const DiscSelfMap& phi, const SpaceSpec& X, const SpaceSpec& Y,
                           const GridSpec& grid) {
    PairEstimate out;
    EstimatorOptions options;
    options.grid = grid;
    if (Y.is_bloch_type()) {
        out.estimate = norm_into_Bv(g, phi, X, Y.weight(), options);
        out.tag = "Thm3.3ii";
        out.rigorous = X.closed_form_delta();  // exact formula, plus the phi(0) term when present
        return out;
    }
    if (Y.is_growth_type()) {
        out.estimate = norm_into_Hv(g, phi, X, Y.weight(), options);
        out.tag = "Thm3.3i";
        return out;
    }
    if (Y.kind() == SpaceKind::hinf && phi.is_identity()) {
        std::optional<double> alpha;
        if (X.kind() == SpaceKind::hinf) alpha = 0.0;
        else if (X.is_growth_type() && !X.is_little()) alpha = X.weight().standard_exponent();
        if (alpha) {
            RadialOptions radial;
            radial.depth = grid.depth;
            radial.n_angles = grid.n_angles;
            const ClassicalBoundedness classical = classical_boundedness(g, *alpha, radial);
            out.estimate = classical.estimate;
            out.tag = "Thm2.3";
            out.rigorous = classical.bounded == Decision::holds;
            return out;
        }
    }
    throw PreconditionError("no criterion in scope for " + X.tag() + " -> " + Y.tag() +
                            "; supported: any X -> Bv_inf/Bv_0, any X -> Hv_inf/Hv_0 (normal v), "
                            "Hv_alpha (standard, alpha >= 0) or Hinf -> Hinf with the identity map");
}

SweepReport consistency_sweep(const std::vector<SweepCase>& cases, std::size_t n_trials, std::uint64_t seed,
                              const GridSpec& grid) {
    SweepReport report;
    for (const SweepCase& c : cases) {
        SweepEntry entry;
        entry.name = c.name;
        const PairEstimate est = estimate_pair(c.g, c.phi, c.X, c.Y, grid);
        entry.tag = est.tag;
        entry.estimator_lower = est.estimate.lower;
        entry.estimator_upper = est.estimate.upper;
        entry.kind = est.estimate.kind;
        entry.rigorous = est.rigorous;
        entry.oracle = mc_norm_lower_bound(c.g, c.phi, c.X, c.Y, n_trials, seed, grid);
        if (std::isfinite(entry.estimator_upper) && entry.estimator_upper > 0.0)
            entry.ratio = entry.oracle.lower_bound / entry.estimator_upper;
        entry.oracle.consistency = entry.ratio;
        entry.hard_failure = entry.rigorous && entry.oracle.lower_bound > entry.estimator_upper + 1e-6;
        if (entry.hard_failure) ++report.hard_failures;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

std::vector<SweepCase> default_sweep_cases() {
    struct Symbol {
        const char* name;
        AnalyticFunction g;
    };
    const std::vector<Symbol> symbols = {
        {"z", AnalyticFunction::identity()},
        {"z^2/2", AnalyticFunction::constant(0.5) * AnalyticFunction::monomial(2)},
        {"(1-z)^0.5", AnalyticFunction::one_minus_z_pow(0.5)},
    };
    const std::vector<std::pair<const char*, DiscSelfMap>> maps = {
        {"id", DiscSelfMap::identity()},
        {"z/2", DiscSelfMap(AnalyticFunction::affine(0.0, 0.5))},
    };
    const std::vector<std::pair<SpaceSpec, SpaceSpec>> pairs = {
        {SpaceSpec::hardy(2.0), SpaceSpec::bv(Weight::standard(0.5))},
        {SpaceSpec::bergman(2.0, 0.0), SpaceSpec::bv(Weight::standard(1.5))},
    };
    std::vector<SweepCase> cases;
    for (const auto& s : symbols)
        for (const auto& [map_name, phi] : maps)
            for (const auto& [X, Y] : pairs)
                cases.push_back({std::string(s.name) + " | " + map_name + " | " + X.tag() + " -> " + Y.tag(), s.g, phi,
                                 X, Y});
    return cases;
}

}  // namespace volterra
