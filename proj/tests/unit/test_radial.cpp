#include <doctest.h>

#include <sstream>

#include "../oracles.hpp"
#include "volterra/expression_parser.hpp"
#include "volterra/radial.hpp"

using namespace volterra;

namespace {

// log(1/(1 - e^{-i} z)), singular at theta = 1
AnalyticFunction parse_rotated_log() {
    return parse_expression("log(1/(1-(0.54030230586813977-0.84147098480789650*i)*z))");
}

}  // namespace

TEST_CASE("limit extrapolation") {
    std::vector<double> geometric, plateau, flat_zero, slow;
    for (int j = 0; j < 30; ++j) {
        geometric.push_back(std::pow(0.5, j));
        plateau.push_back(0.5 + std::pow(0.5, j + 1));
        flat_zero.push_back(0.0);
        slow.push_back(1.0 / std::log(j + 3.0));
    }
    CHECK(extrapolate_limit(geometric).kind == LimitKind::zero);
    const LimitFit p = extrapolate_limit(plateau);
    CHECK(p.kind == LimitKind::positive);
    CHECK(p.estimate == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(p.lower <= p.estimate);
    CHECK(p.estimate <= p.upper);
    CHECK(extrapolate_limit(flat_zero).kind == LimitKind::zero);
    CHECK(extrapolate_limit(slow).kind == LimitKind::undecided);
    CHECK(p.vanishes(1e-6) == Decision::fails);
    CHECK(extrapolate_limit(geometric).vanishes(1e-6) == Decision::holds);
    CHECK(extrapolate_limit(slow).vanishes(1e-6) == Decision::undecided);
}

TEST_CASE("increment classification") {
    std::vector<double> convergent, divergent, harmonic;
    for (int j = 1; j <= 30; ++j) {
        convergent.push_back(std::pow(2.0, -0.5 * j));
        divergent.push_back(1.0);
        harmonic.push_back(1.0 / j);
    }
    const GrowthFit c = classify_increments(convergent);
    CHECK(c.growth == Growth::convergent);
    CHECK(c.slope == doctest::Approx(-0.5).epsilon(1e-12));
    const double q = std::pow(2.0, -0.5);
    CHECK(c.remainder == doctest::Approx(convergent.back() * q / (1 - q)).epsilon(1e-12));
    CHECK(classify_increments(divergent).growth == Growth::divergent);
    CHECK(std::isinf(classify_increments(divergent).remainder));
    CHECK(classify_increments(harmonic).growth != Growth::convergent);
}

TEST_CASE("growth detection and slopes") {
    std::vector<double> x, bounded, growing, logarithmic;
    for (int k = 1; k <= 40; ++k) {
        x.push_back(k * std::log(2.0));
        bounded.push_back(1 - std::pow(0.5, k));
        growing.push_back(std::pow(2.0, 0.5 * k));  // (1-r)^{-1/2}
        logarithmic.push_back(std::log1p(static_cast<double>(k)));
    }
    CHECK_FALSE(grows_without_bound(bounded, x));
    double slope = 0;
    CHECK(grows_without_bound(growing, x, &slope));
    CHECK(slope == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(grows_without_bound(logarithmic, x));
    double r2 = 0;
    CHECK(fit_slope(x, x, &r2) == doctest::Approx(1.0));
    CHECK(r2 == doctest::Approx(1.0));
}

TEST_CASE("radial integrals match long-double quadrature") {
    const AnalyticFunction g = AnalyticFunction::identity();
    for (double alpha : {0.0, 0.25, 0.5, 0.75}) {
        const double got = radial_integral(g, alpha, 0.3, 0.1, 1 - 1e-9);
        const double ref = oracle::radial_reference([](double) { return 1.0; }, alpha, 0.1, 1 - 1e-9);
        CHECK(got == doctest::Approx(ref).epsilon(1e-9));
    }
    const AnalyticFunction h = AnalyticFunction::one_minus_z_pow(0.3);
    const double theta = 0.4;
    const double got = radial_integral(h, 0.5, theta, 0.0, 1 - 1e-6);
    const double ref = oracle::radial_reference(
        [&](double r) { return 0.3 * std::pow(std::abs(1.0 - std::polar(r, theta)), -0.7); }, 0.5, 0.0, 1 - 1e-6);
    CHECK(got == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("ray profiles split at dyadic cutoffs") {
    const AnalyticFunction dg = AnalyticFunction::identity().derivative();
    RadialOptions opts;
    opts.depth = 20;
    const RayProfile ray = ray_profile(dg, 0.0, 1.0, 0.0, opts);
    CHECK(ray.value == doctest::Approx(1 - std::ldexp(1.0, -20)).epsilon(1e-12));
    CHECK(ray.increments.size() == ray.cutoffs.size());
    double sum = 0;
    for (double d : ray.increments) sum += d;
    CHECK(sum == doctest::Approx(ray.value).epsilon(1e-12));
    CHECK(ray.fit.growth == Growth::convergent);
    CHECK(ray.limit == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sup over angles") {
    RadialOptions opts;
    opts.depth = 24;
    opts.n_angles = 128;
    const SupThetaResult lg = sup_theta_integral(AnalyticFunction::log_one_over_one_minus_z(), 0.0, 0.0, opts);
    CHECK(lg.growth == Growth::divergent);
    CHECK(std::abs(lg.argmax_theta) < 1e-2);
    CHECK(std::isinf(lg.sup_limit));
    const SupThetaResult rot = sup_theta_integral(parse_rotated_log(), 0.0, 0.0, opts);
    CHECK(std::abs(rot.argmax_theta - 1.0) < 1e-2);
}

TEST_CASE("tail profiles and radial variation") {
    RadialOptions opts;
    opts.depth = 20;
    opts.n_angles = 64;
    const RadialProfile lin = tail_sup_profile(AnalyticFunction::identity(), 0.0, opts);
    for (std::size_t j = 0; j < lin.cutoffs.size(); ++j) {
        CHECK(lin.sup_tails[j] == doctest::Approx(lin.r_max - lin.cutoffs[j]).epsilon(1e-9));
        if (j > 0) CHECK(lin.sup_tails[j] <= lin.sup_tails[j - 1]);
    }
    CHECK(lin.verdict() == "compact-consistent");

    const MembershipResult in = brv_membership(AnalyticFunction::identity(), opts);
    CHECK(in.member == Decision::holds);
    const MembershipResult out = brv_membership(AnalyticFunction::log_one_over_one_minus_z(), opts);
    CHECK(out.member == Decision::fails);
    CHECK(out.verdict == "not-in-BRV");
    CHECK(brv0_membership(AnalyticFunction::one_minus_z_pow(0.5), opts).member == Decision::holds);

    std::ostringstream csv;
    write_csv(lin, csv);
    const std::string text = csv.str();
    CHECK(text.rfind("theta,value,growth,tail_1,", 0) == 0);
    CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == lin.angles.size() + 1);
}
