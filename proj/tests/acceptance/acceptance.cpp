// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "../zoo.hpp"
#include "volterra/estimators.hpp"
#include "volterra/expression_parser.hpp"
#include "volterra/oracle.hpp"

using namespace volterra;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

std::vector<Complex> random_points(std::size_t n, double rmax, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(0.0, rmax), angle(-kPi, kPi);
    std::vector<Complex> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::polar(radius(rng), angle(rng)));
    return out;
}

Outcome classical_values() {
    Outcome o;
    const AnalyticFunction z = AnalyticFunction::identity();
    const ClassicalBoundedness a0 = classical_boundedness(z, 0.0);
    o.require(std::abs(a0.estimate.upper - 1.0) <= 1e-9, "alpha=0 value 1");
    const ClassicalBoundedness a1 = classical_boundedness(z, 0.5);
    const double reference = oracle::radial_reference([](double) { return 1.0; }, 0.5, 0.0, 1.0);
    o.require(std::abs(a1.estimate.upper - reference) <= 1e-6, "alpha=1/2 value vs reference");
    const ClassicalBoundedness lg = classical_boundedness(AnalyticFunction::log_one_over_one_minus_z(), 0.0);
    o.require(lg.bounded == Decision::fails && lg.sup && lg.sup->growth == Growth::divergent, "log divergent");
    o.require(lg.sup && std::abs(lg.sup->argmax_theta) < 1e-2, "log witness angle");
    o.detail.precision(12);
    o.detail << "z: " << a0.estimate.upper << " (alpha=0), " << a1.estimate.upper << " vs " << reference
             << " (alpha=1/2); log: " << lg.verdict << " at theta=" << (lg.sup ? lg.sup->argmax_theta : 0.0);
    return o;
}

Outcome compactness_tails() {
    Outcome o;
    const ClassicalCompactness c = classical_compactness(AnalyticFunction::identity(), 0.0);
    double worst = 0;
    if (c.profile) {
        const RadialProfile& p = *c.profile;
        for (std::size_t j = 0; j < p.cutoffs.size(); ++j)
            worst = std::max(worst, std::abs(p.sup_tails[j] - (p.r_max - p.cutoffs[j])));
        o.require(p.tail_limit.kind == LimitKind::zero, "tail limit 0");
    }
    o.require(c.profile.has_value() && worst <= 1e-9, "tails equal r_max - t");
    o.require(c.verdict == "compact-consistent", "verdict");
    o.detail << "max |tail - (r_max - t)| = " << worst << ", verdict " << c.verdict;
    return o;
}

Outcome exact_norm() {
    Outcome o;
    const DiscSelfMap id = DiscSelfMap::identity();
    const AnalyticFunction z = AnalyticFunction::identity();
    const SpaceSpec X = SpaceSpec::hardy(2);
    const Weight v = Weight::standard(0.5);
    const NormEstimate n = norm_into_Bv(z, id, X, v);
    o.require(n.kind == EstimateKind::exact_equality, "equality kind");
    o.require(std::abs(n.upper - 1.0) <= 1e-6 && std::abs(n.lower - 1.0) <= 1e-6, "grid sup in [1-1e-6, 1+1e-6]");
    const OracleReport r = mc_norm_lower_bound(z, id, X, SpaceSpec::bv(v), 2000, 20240601);
    o.require(r.lower_bound >= 0.95, "oracle >= 0.95");
    o.require(r.lower_bound <= n.upper + 1e-6, "oracle <= norm");
    o.detail.precision(12);
    o.detail << "norm " << n.upper << ", oracle " << r.lower_bound << " (" << r.best_witness << ")";
    return o;
}

Outcome essential_norm() {
    Outcome o;
    const DiscSelfMap id = DiscSelfMap::identity();
    const SpaceSpec X = SpaceSpec::bergman(1, 0);
    const Weight v = Weight::standard(1);
    const NormEstimate e = essnorm_into_Hv(AnalyticFunction::identity(), id, X, v);
    const NormEstimate cor = corollary_specializations(AnalyticFunction::identity(), id, 1, 0.0, v, TargetFamily::Hv);
    const double limit = e.limit ? e.limit->estimate : -1;
    o.require(std::abs(limit - 0.5) <= 0.02, "limit 0.5 +- 0.02");
    o.require(e.compact == Decision::fails, "noncompact");
    o.require(cor.limit && std::abs(cor.limit->estimate - limit) <= 1e-10, "corollary route agrees");
    const NormEstimate c = essnorm_into_Hv(AnalyticFunction::constant(1.0), id, X, v);
    const double climit = c.limit ? c.limit->estimate : -1;
    o.require(climit == 0.0 && c.compact == Decision::holds, "constant symbol compact");
    o.detail.precision(12);
    o.detail << "g=z: limit " << limit << " (" << to_string(e.compact) << " compact); constant: limit " << climit << " ("
             << to_string(c.compact) << " compact)";
    return o;
}

Outcome little_space_example() {
    Outcome o;
    const double delta = 0.3, alpha = 0.5;
    const AnalyticFunction g = AnalyticFunction::one_minus_z_pow(delta);
    const AnalyticFunction dg = g.derivative();
    const DiscGrid grid;
    double worst_upper = -1e300;
    for (std::size_t k = 0; k < grid.ring_count(); ++k) {
        const double r = grid.radii()[k];
        const double s = (1 - r) * (1 + r);
        for (std::size_t m = 0; m < grid.angle_count(); ++m) {
            const double lhs = std::abs(dg(grid.point(k, m))) * s;
            worst_upper = std::max(worst_upper, lhs - 2 * delta * std::pow(s, delta));
        }
    }
    o.require(worst_upper <= 1e-10, "upper inequality on the grid");
    double worst_lower = 1e300;
    const Weight va = Weight::standard(alpha);
    for (double r : grid.radii()) {
        const double lhs = va(r) * std::abs(dg(r));
        worst_lower = std::min(worst_lower, lhs - delta * std::pow(1 - r, alpha + delta - 1));
    }
    o.require(worst_lower >= -1e-10, "lower inequality on the real axis");
    const DiscSelfMap id = DiscSelfMap::identity();
    const LittleSpaceResult half = little_space_transfer(g, id, va, TargetFamily::Bv);
    const LittleSpaceResult one = little_space_transfer(g, id, Weight::standard(1), TargetFamily::Bv);
    o.require(half.membership == Decision::fails, "not in B_{v_1/2}^0");
    o.require(one.membership == Decision::holds, "in B_{v_1}^0");
    o.detail << "max upper excess " << worst_upper << ", min lower margin " << worst_lower << "; v_1/2 "
             << to_string(half.membership) << ", v_1 " << to_string(one.membership);
    return o;
}

Outcome normality() {
    Outcome o;
    const NormalityReport a = is_normal(Weight::standard(0.5));
    const NormalityReport b = is_normal(Weight::standard(1));
    const NormalityReport e = is_normal(Weight::from_log_profile("exp(-1/(1-r))", [](double r) { return -1 / (1 - r); }));
    o.require(a.normal && b.normal, "standard weights normal");
    o.require(!e.normal && !e.cond2_bounded, "exponential weight fails via cond2");
    o.detail << "v_0.5 " << a.normal << ", v_1 " << b.normal << ", exp(-1/(1-r)) " << e.normal << " ("
             << e.note << ")";
    return o;
}

Outcome identity_check() {
    Outcome o;
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<std::size_t> pick_g(0, zoo::symbols().size() - 1), pick_phi(0, zoo::maps().size() - 1);
    std::uniform_real_distribution<double> radius(0.0, 0.999), angle(-kPi, kPi);
    const AnalyticFunction one = AnalyticFunction::constant(1.0);
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const AnalyticFunction g = parse_expression(zoo::symbols()[pick_g(rng)]);
        const DiscSelfMap phi(parse_expression(zoo::maps()[pick_phi(rng)]), GridSpec{10, 2, 32});
        const Complex z = std::polar(radius(rng), angle(rng));
        worst = std::max(worst, std::abs(apply(g, phi, one, z) - (g(phi(z)) - g(0.0))));
    }
    o.require(worst <= 1e-10, "max error <= 1e-10");
    o.detail << "max |T_g^phi 1 - (g o phi - g(0))| = " << worst;
    return o;
}

Outcome delta_norms() {
    Outcome o;
    double worst = 0;
    for (Complex z : random_points(50, 0.99, 31337)) {
        worst = std::max(worst, std::abs(delta_norm(SpaceSpec::hardy(2), z).upper / oracle::hardy2_kernel_norm(z) - 1));
        for (double a : {0.0, 1.0})
            worst = std::max(worst, std::abs(delta_norm(SpaceSpec::bergman(2, a), z).upper /
                                                 oracle::bergman2_kernel_norm(z, a) - 1));
    }
    o.require(worst <= 1e-10, "relative error <= 1e-10");
    o.detail << "max relative deviation " << worst;
    return o;
}

Outcome sweep() {
    Outcome o;
    const SweepReport r = consistency_sweep(default_sweep_cases(), 200, 7);
    o.require(r.entries.size() == 12, "12 cases");
    o.require(r.hard_failures == 0, "zero hard failures");
    double ratio = 0;
    for (const SweepEntry& e : r.entries)
        if (std::isfinite(e.ratio)) ratio = std::max(ratio, e.ratio);
    o.detail << r.entries.size() << " cases, " << r.hard_failures << " hard failures, max oracle/estimate " << ratio;
    return o;
}

Outcome properties() {
    Outcome o;
    std::size_t checks = 0, failures = 0;
    const auto expect = [&](bool ok) {
        ++checks;
        if (!ok) ++failures;
    };
    // rotation equivariance
    RadialOptions ropts;
    ropts.depth = 24;
    ropts.n_angles = 256;
    const AnalyticFunction base = parse_expression("z^2 + 0.5*z");
    const SupThetaResult b = sup_theta_integral(base, 0.0, 0.0, ropts);
    for (double gamma : {0.7, -2.1, 3.0}) {
        const SupThetaResult r = sup_theta_integral(base.compose(AnalyticFunction::affine(0.0, std::polar(1.0, gamma))), 0.0, 0.0, ropts);
        expect(std::abs(r.sup / b.sup - 1) <= 1e-8);
        expect(std::abs(std::remainder(r.argmax_theta + gamma, kTwoPi)) < 1e-6);
    }
    // scaling homogeneity
    const GridSpec grid{16, 4, 64};
    EstimatorOptions eopts;
    eopts.grid = grid;
    const DiscSelfMap id = DiscSelfMap::identity();
    for (const char* text : {"(1-z)^0.5", "z^3 - 0.5*z", "log(2-z)"}) {
        const AnalyticFunction g = parse_expression(text);
        const Complex c(-1.5, 2.0);
        const NormEstimate a = norm_into_Bv(g, id, SpaceSpec::hardy(2), Weight::standard(1), eopts);
        const NormEstimate s = norm_into_Bv(c * g, id, SpaceSpec::hardy(2), Weight::standard(1), eopts);
        expect(std::abs(s.upper - std::abs(c) * a.upper) <= 1e-12 * s.upper);
        const NormEstimate ea = essnorm_into_Bv(g, id, SpaceSpec::hardy(2), Weight::standard(1), eopts);
        const NormEstimate es = essnorm_into_Bv(c * g, id, SpaceSpec::hardy(2), Weight::standard(1), eopts);
        expect(ea.compact == es.compact);
    }
    // tail monotonicity
    RadialOptions topts;
    topts.depth = 20;
    topts.n_angles = 32;
    for (const char* text : {"(1-z)^0.5", "log(1/(1-z))"}) {
        const RadialProfile p = tail_sup_profile(parse_expression(text), 0.0, topts);
        for (const auto& tail : p.tails)
            for (std::size_t j = 1; j < tail.size(); ++j) expect(tail[j] <= tail[j - 1]);
    }
    // essnorm <= norm and nonincreasing thresholded sups
    for (const std::string& g_text : zoo::symbols()) {
        for (const char* phi_text : {"z", "(1+z)/2"}) {
            const AnalyticFunction g = parse_expression(g_text);
            const DiscSelfMap phi(parse_expression(phi_text), grid);
            const Weight v = Weight::standard(1.5);
            const NormEstimate n = norm_into_Hv(g, phi, SpaceSpec::bergman(2, 0), v, eopts);
            const NormEstimate e = essnorm_into_Hv(g, phi, SpaceSpec::bergman(2, 0), v, eopts);
            expect(e.upper <= n.upper * (1 + 1e-12));
            for (std::size_t j = 1; j < e.sequence.size(); ++j) expect(e.sequence[j] <= e.sequence[j - 1]);
        }
    }
    o.require(failures == 0, "all property checks");
    o.detail << checks - failures << "/" << checks << " property checks";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* id;
        const char* title;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"A1", "classical criterion values", classical_values},
        {"A2", "compactness tails", compactness_tails},
        {"A3", "exact-equality norm and oracle", exact_norm},
        {"A4", "essential-norm limit", essential_norm},
        {"A5", "(1-z)^delta inequalities and little-space membership", little_space_example},
        {"A6", "weight normality", normality},
        {"A7", "T_g^phi 1 = g o phi - g(0)", identity_check},
        {"A8", "evaluation norms vs reproducing kernels", delta_norms},
        {"A9", "consistency sweep", sweep},
        {"A10", "property suite", properties},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& err) {
            outcome.pass = false;
            outcome.detail << "exception: " << err.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%-4s %s  %s: %s (%.1f s)\n", c.id, outcome.pass ? "PASS" : "FAIL", c.title,
                    outcome.detail.str().c_str(), seconds);
        std::fflush(stdout);
        if (!outcome.pass) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
