#include <doctest.h>

#include "volterra/expression_parser.hpp"
#include "volterra/oracle.hpp"

using namespace volterra;

namespace {

const GridSpec kGrid{16, 4, 128};

}  // namespace

TEST_CASE("numeric space norms") {
    CHECK(space_norm(AnalyticFunction::constant(1.0), SpaceSpec::hardy(2), kGrid) == doctest::Approx(1.0).epsilon(1e-12));
    for (int n = 1; n <= 32; ++n)
        CHECK(space_norm(AnalyticFunction::monomial(n), SpaceSpec::hardy(2), kGrid) == doctest::Approx(1.0).epsilon(1e-3));
    // normalized reproducing kernel at w = 0.6
    const AnalyticFunction k = parse_expression("0.8/(1-0.6*z)");
    CHECK(space_norm(k, SpaceSpec::hardy(2), kGrid) == doctest::Approx(1.0).epsilon(1e-4));
    // ||z||^2 in A^2_0 is 1/2
    CHECK(space_norm(AnalyticFunction::identity(), SpaceSpec::bergman(2, 0), GridSpec{30, 4, 128}) ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
    CHECK(space_norm(AnalyticFunction::identity(), SpaceSpec::bergman(2, 0), kGrid) <= std::sqrt(0.5));
    CHECK(space_norm(parse_expression("z/2"), SpaceSpec::hinf(), kGrid) == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(space_norm(AnalyticFunction::identity(), SpaceSpec::bv(Weight::standard(1)), kGrid) == doctest::Approx(1.0));
    CHECK(std::isinf(space_norm(AnalyticFunction::log_one_over_one_minus_z(), SpaceSpec::hinf(), kGrid)));
}

TEST_CASE("dilations do not increase H^inf and H_v norms") {
    const AnalyticFunction f = parse_expression("(1-z)^0.5 + z^3");
    const AnalyticFunction fr = parse_expression("(1-0.7*z)^0.5 + (0.7*z)^3");
    for (const SpaceSpec& X : {SpaceSpec::hinf(), SpaceSpec::hv(Weight::standard(0.5))})
        CHECK(space_norm(fr, X, kGrid) <= space_norm(f, X, kGrid) + 1e-12);
}

TEST_CASE("trivial symbols and maps give zero") {
    const SpaceSpec X = SpaceSpec::hardy(2);
    const SpaceSpec Y = SpaceSpec::bv(Weight::standard(0.5));
    CHECK(mc_norm_lower_bound(AnalyticFunction(), DiscSelfMap::identity(), X, Y, 20, 1, kGrid).lower_bound == 0.0);
    CHECK(mc_norm_lower_bound(AnalyticFunction::constant(4.0), DiscSelfMap::identity(), X, Y, 20, 1, kGrid).lower_bound ==
          0.0);
    const DiscSelfMap zero = DiscSelfMap::with_bound(AnalyticFunction(), 0.0);
    CHECK(mc_norm_lower_bound(AnalyticFunction::identity(), zero, X, Y, 20, 1, kGrid).lower_bound == 0.0);
}

TEST_CASE("oracle approaches the exact norm from below") {
    const OracleReport r = mc_norm_lower_bound(AnalyticFunction::identity(), DiscSelfMap::identity(), SpaceSpec::hardy(2),
                                               SpaceSpec::bv(Weight::standard(0.5)), 50, 9);
    CHECK(r.lower_bound >= 0.95);
    CHECK(r.lower_bound <= 1.0 + 1e-6);
    CHECK(r.n_trials == 50);
    CHECK(r.n_structured > 0);
    CHECK_FALSE(r.best_witness.empty());
}

TEST_CASE("oracle is deterministic and monotone in the trial count") {
    const AnalyticFunction g = parse_expression("z^2/2");
    const SpaceSpec X = SpaceSpec::bergman(2, 0);
    const SpaceSpec Y = SpaceSpec::bv(Weight::standard(1.5));
    const DiscSelfMap id = DiscSelfMap::identity();
    double previous = 0;
    for (std::size_t n : {0u, 5u, 20u, 60u}) {
        const OracleReport a = mc_norm_lower_bound(g, id, X, Y, n, 17, kGrid);
        const OracleReport b = mc_norm_lower_bound(g, id, X, Y, n, 17, kGrid);
        CHECK(a.lower_bound == b.lower_bound);
        CHECK(a.best_witness == b.best_witness);
        CHECK(a.lower_bound >= previous);
        previous = a.lower_bound;
    }
}

TEST_CASE("pair dispatch") {
    const DiscSelfMap id = DiscSelfMap::identity();
    const AnalyticFunction z = AnalyticFunction::identity();
    CHECK(estimate_pair(z, id, SpaceSpec::hardy(2), SpaceSpec::bv(Weight::standard(0.5)), kGrid).tag == "Thm3.3ii");
    CHECK(estimate_pair(z, id, SpaceSpec::hardy(2), SpaceSpec::hv(Weight::standard(1)), kGrid).tag == "Thm3.3i");
    const PairEstimate classical = estimate_pair(z, id, SpaceSpec::hv(Weight::standard(0.5)), SpaceSpec::hinf(), kGrid);
    CHECK(classical.tag == "Thm2.3");
    CHECK(classical.rigorous);
    CHECK_THROWS_AS(estimate_pair(z, id, SpaceSpec::hardy(2), SpaceSpec::hinf(), kGrid), PreconditionError);
}

TEST_CASE("consistency sweep on the default matrix") {
    const SweepReport report = consistency_sweep(default_sweep_cases(), 40, 3, kGrid);
    CHECK(report.entries.size() == 12);
    CHECK(report.hard_failures == 0);
    for (const SweepEntry& e : report.entries) CHECK(e.oracle.lower_bound <= e.estimator_upper + 1e-6);
}

TEST_CASE("constant symbols are consistent everywhere") {
    const AnalyticFunction c = AnalyticFunction::constant(2.5);
    std::vector<SweepCase> cases;
    for (const SpaceSpec& X : {SpaceSpec::hardy(2), SpaceSpec::bergman(2, 0), SpaceSpec::hinf()})
        cases.push_back({"constant", c, DiscSelfMap::identity(), X, SpaceSpec::bv(Weight::standard(1))});
    const SweepReport report = consistency_sweep(cases, 10, 1, kGrid);
    CHECK(report.hard_failures == 0);
    for (const SweepEntry& e : report.entries) {
        CHECK(e.estimator_upper == 0.0);
        CHECK(e.oracle.lower_bound == 0.0);
    }
}
