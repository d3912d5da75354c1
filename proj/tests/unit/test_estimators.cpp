#include <doctest.h>

#include <random>
#include <sstream>

#include "volterra/estimators.hpp"
#include "volterra/expression_parser.hpp"

using namespace volterra;

namespace {

const GridSpec kGrid{20, 4, 128};

EstimatorOptions options() {
    EstimatorOptions o;
    o.grid = kGrid;
    return o;
}

}  // namespace

TEST_CASE("T_g^phi 1 equals g o phi - g(0)") {
    const AnalyticFunction one = AnalyticFunction::constant(1.0);
    const AnalyticFunction g = parse_expression("log(1/(1-z)) + z^2");
    const DiscSelfMap phi(parse_expression("(1+z)/2"));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> radius(0.0, 0.999), angle(-kPi, kPi);
    for (int k = 0; k < 100; ++k) {
        const Complex z = std::polar(radius(rng), angle(rng));
        CHECK(std::abs(apply(g, phi, one, z) - (g(phi(z)) - g(0.0))) < 1e-10);
    }
}

TEST_CASE("exact norm into B_v for closed-form sources") {
    const DiscSelfMap id = DiscSelfMap::identity();
    const NormEstimate n = norm_into_Bv(AnalyticFunction::identity(), id, SpaceSpec::hardy(2), Weight::standard(0.5), options());
    CHECK(n.kind == EstimateKind::exact_equality);
    CHECK(n.upper == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(n.lower == n.upper);
    // z/2 composed: sup (1-r^2)^{1/2} (1/2) (1 - r^2/4)^{-1/2} = 1/2 at r = 0
    const DiscSelfMap half(parse_expression("z/2"));
    const NormEstimate h = norm_into_Bv(AnalyticFunction::identity(), half, SpaceSpec::hardy(2), Weight::standard(0.5), options());
    CHECK(h.upper == doctest::Approx(0.5).epsilon(1e-9));
    // v_{1/4} cannot absorb ||delta_z|| = (1-|z|^2)^{-1/2}
    const NormEstimate u = norm_into_Bv(AnalyticFunction::identity(), id, SpaceSpec::hardy(2), Weight::standard(0.25), options());
    CHECK(u.unbounded);
    CHECK(std::isinf(u.upper));
}

TEST_CASE("growth targets need normal weights") {
    const Weight fast = Weight::from_log_profile("exp(-1/(1-r))", [](double r) { return -1.0 / (1.0 - r); });
    CHECK_THROWS_AS(norm_into_Hv(AnalyticFunction::identity(), DiscSelfMap::identity(), SpaceSpec::hardy(2), fast, options()),
                    PreconditionError);
    const NormEstimate n =
        norm_into_Hv(AnalyticFunction::identity(), DiscSelfMap::identity(), SpaceSpec::hardy(2), Weight::standard(1), options());
    CHECK(n.kind == EstimateKind::two_sided_equivalence);
    CHECK(std::isfinite(n.upper));
}

TEST_CASE("essential norm of the Bergman example") {
    const DiscSelfMap id = DiscSelfMap::identity();
    const NormEstimate e =
        essnorm_into_Hv(AnalyticFunction::identity(), id, SpaceSpec::bergman(1, 0), Weight::standard(1), options());
    REQUIRE(e.limit);
    CHECK(e.limit->estimate == doctest::Approx(0.5).epsilon(0.02));
    CHECK(e.compact == Decision::fails);
    const NormEstimate c =
        essnorm_into_Hv(AnalyticFunction::constant(3.0), id, SpaceSpec::bergman(1, 0), Weight::standard(1), options());
    CHECK(c.limit->estimate == 0.0);
    CHECK(c.compact == Decision::holds);
}

TEST_CASE("maps into a smaller disc give compact operators") {
    const DiscSelfMap half(parse_expression("z/2"));
    const NormEstimate e = essnorm_into_Bv(AnalyticFunction::identity(), half, SpaceSpec::hardy(2), Weight::standard(1), options());
    CHECK(e.compact == Decision::holds);
    CHECK(e.sequence.empty());
}

TEST_CASE("corollary paths agree with the generic essential norm") {
    const DiscSelfMap id = DiscSelfMap::identity();
    const DiscSelfMap lens(parse_expression("(1+z)/2"));
    const AnalyticFunction g = parse_expression("(1-z)^0.6");
    struct Source {
        SpaceSpec X;
        double p;
        std::optional<double> alpha;
    };
    const std::vector<Source> sources = {{SpaceSpec::hardy(1), 1, std::nullopt},
                                         {SpaceSpec::hardy(2), 2, std::nullopt},
                                         {SpaceSpec::bergman(2, 0), 2, 0.0},
                                         {SpaceSpec::bergman(1, 1), 1, 1.0}};
    for (const auto* phi : {&id, &lens}) {
        for (const Source& s : sources) {
            const Weight v = Weight::standard(1.5);
            const NormEstimate generic_h = essnorm_into_Hv(g, *phi, s.X, v, options());
            const NormEstimate cor_h = corollary_specializations(g, *phi, s.p, s.alpha, v, TargetFamily::Hv, options());
            REQUIRE(generic_h.sequence.size() == cor_h.sequence.size());
            for (std::size_t j = 0; j < cor_h.sequence.size(); ++j)
                CHECK(cor_h.sequence[j] == doctest::Approx(generic_h.sequence[j]).epsilon(1e-10));
            const NormEstimate generic_b = essnorm_into_Bv(g, *phi, s.X, v, options());
            const NormEstimate cor_b = corollary_specializations(g, *phi, s.p, s.alpha, v, TargetFamily::Bv, options());
            REQUIRE(generic_b.sequence.size() == cor_b.sequence.size());
            for (std::size_t j = 0; j < cor_b.sequence.size(); ++j)
                CHECK(cor_b.sequence[j] == doctest::Approx(generic_b.sequence[j]).epsilon(1e-10));
        }
    }
    CHECK(corollary_tag(std::nullopt, TargetFamily::Bv) == "Cor3.7iii");
    CHECK(corollary_tag(0.0, TargetFamily::Hv) == "Cor3.7ii");
}

TEST_CASE("classical criteria") {
    RadialOptions opts;
    opts.depth = 30;
    opts.n_angles = 128;
    const ClassicalBoundedness b = classical_boundedness(AnalyticFunction::identity(), 0.0, opts);
    CHECK(b.bounded == Decision::holds);
    CHECK(b.estimate.upper == doctest::Approx(1.0).epsilon(1e-9));
    const ClassicalBoundedness h = classical_boundedness(AnalyticFunction::identity(), 0.5, opts);
    CHECK(h.estimate.upper == doctest::Approx(kPi / 2).epsilon(1e-6));
    const ClassicalBoundedness u = classical_boundedness(AnalyticFunction::identity(), 1.0, opts);
    CHECK(u.bounded == Decision::fails);
    const ClassicalCompactness c = classical_compactness(AnalyticFunction::identity(), 0.0, opts);
    CHECK(c.verdict == "compact-consistent");
    const ClassicalCompactness l = classical_compactness(AnalyticFunction::log_one_over_one_minus_z(), 0.0, opts);
    CHECK(l.compact == Decision::fails);
}

TEST_CASE("little-space transfer") {
    const DiscSelfMap id = DiscSelfMap::identity();
    const AnalyticFunction g = AnalyticFunction::one_minus_z_pow(0.3);
    CHECK(little_space_transfer(g, id, Weight::standard(1), TargetFamily::Bv, options()).membership == Decision::holds);
    CHECK(little_space_transfer(g, id, Weight::standard(0.5), TargetFamily::Bv, options()).membership == Decision::fails);
    CHECK(little_space_transfer(g, id, Weight::standard(0.5), TargetFamily::Hv, options()).membership == Decision::holds);
}

TEST_CASE("vanishing condition for composition-type operators") {
    const DiscSelfMap id = DiscSelfMap::identity();
    const Condition9Result yes =
        cor312_condition9(AnalyticFunction::identity(), id, Weight::standard(1), Weight::standard(1.5), options());
    CHECK(yes.holds == Decision::holds);
    const Condition9Result no =
        cor312_condition9(AnalyticFunction::identity(), id, Weight::standard(2), Weight::standard(1), options());
    CHECK(no.holds == Decision::fails);
    CHECK(no.equivalence_ratio < 3.0);
}

TEST_CASE("symbol field export") {
    const SymbolField f = symbol_field(AnalyticFunction::identity(), DiscSelfMap::identity(), SpaceSpec::hardy(2),
                                       Weight::standard(0.5), GridSpec{8, 2, 16});
    CHECK(f.radii.size() == 17);
    CHECK(f.angles.size() == 16);
    for (std::size_t k = 0; k < f.radii.size(); ++k)
        for (std::size_t m = 1; m < f.angles.size(); ++m)
            CHECK(f.sigma_b_upper[f.index(k, m)] == doctest::Approx(f.sigma_b_upper[f.index(k, 0)]).epsilon(1e-13));
    std::ostringstream csv;
    write_csv(f, csv);
    CHECK(csv.str().rfind("r,theta,sigma_H,sigma_B,phi_abs,sigma_H_lower,sigma_B_lower\n", 0) == 0);
}

TEST_CASE("B_v norm brackets the point-evaluation term when phi(0) != 0") {
    const DiscSelfMap phi(parse_expression("(z+0.4)/(1+0.4*z)"), GridSpec{16, 4, 128});
    const NormEstimate n = norm_into_Bv(AnalyticFunction::identity(), phi, SpaceSpec::hardy(2), Weight::standard(1), options());
    CHECK(n.kind == EstimateKind::two_sided_equivalence);
    // (1-|z|^2)|phi'| ||delta_phi|| = (1-|phi|^2)^{1/2} peaks at phi = 0; |T f(0)| <= int_0^0.4 (1-s^2)^{-1/2} ds
    CHECK(n.lower == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(n.upper - n.grid_sup >= std::asin(0.4) - 1e-12);
    CHECK(n.upper <= n.lower + std::asin(0.4) + 1e-4);
}
