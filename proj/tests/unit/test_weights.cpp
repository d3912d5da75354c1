#include <doctest.h>

#include <cmath>

#include "volterra/weight.hpp"

using namespace volterra;

namespace {

// max over r of (1-r^2)^a r^n, from the critical point r^2 = n/(n+2a)
double standard_monomial_sup(double a, double n) {
    if (n == 0) return 1.0;
    return std::pow(2 * a / (n + 2 * a), a) * std::pow(n / (n + 2 * a), n / 2);
}

double scanned_monomial_sup(const Weight& v, double n) {
    double best = 0;
    for (int k = 0; k < 200000; ++k) {
        const double r = k / 200000.0;
        best = std::max(best, v(r) * std::pow(r, n));
    }
    return best;
}

}  // namespace

TEST_CASE("standard weights") {
    const Weight v = Weight::standard(0.5);
    CHECK(v(0.0) == 1.0);
    CHECK(v(0.6) == doctest::Approx(std::sqrt(1 - 0.36)).epsilon(1e-14));
    const double r = 1 - 1e-12;
    CHECK(v.log_value(r) == doctest::Approx(0.5 * std::log((1 - r) * (1 + r))).epsilon(1e-12));
    CHECK(*v.standard_exponent() == 0.5);
    CHECK_THROWS_AS(Weight::standard(0.0), DomainError);
    CHECK_THROWS_AS(v(1.0), DomainError);
}

TEST_CASE("monomial suprema") {
    for (double a : {0.25, 0.5, 1.0, 2.0}) {
        const Weight v = Weight::standard(a);
        for (double n : {0.0, 1.0, 5.0, 64.0, 1000.0, 1e6}) {
            CHECK(std::exp(v.monomial_log_sup(n)) == doctest::Approx(standard_monomial_sup(a, n)).epsilon(1e-10));
        }
        for (const auto& m : v.monomial_table())
            CHECK(m.log_sup == doctest::Approx(std::log(standard_monomial_sup(a, m.degree))).epsilon(1e-9));
    }
    const Weight profile = Weight::from_profile("(1-r)^0.7", [](double r) { return std::pow(1 - r, 0.7); });
    for (double n : {1.0, 10.0, 100.0}) {
        CHECK(std::exp(profile.monomial_log_sup(n)) == doctest::Approx(scanned_monomial_sup(profile, n)).epsilon(1e-6));
    }
}

TEST_CASE("normality") {
    for (double a : {0.25, 0.5, 1.0, 3.0}) CHECK(is_normal(Weight::standard(a)).normal);
    const Weight fast = Weight::from_log_profile("exp(-1/(1-r))", [](double r) { return -1.0 / (1.0 - r); });
    const NormalityReport report = is_normal(fast);
    CHECK_FALSE(report.normal);
    CHECK_FALSE(report.cond2_bounded);
    const Weight slow = Weight::from_profile("1/log(e/(1-r))", [](double r) { return 1.0 / std::log(std::exp(1.0) / (1 - r)); });
    const NormalityReport slow_report = is_normal(slow);
    CHECK_FALSE(slow_report.normal);  // cond1 fails: the decay is slower than any power
    CHECK(slow_report.cond2_bounded);
}

TEST_CASE("table weights") {
    const Weight v = Weight::from_table({{0, 1}, {0.5, 0.75}, {0.9, 0.19}});
    CHECK(v(0.0) == doctest::Approx(1));
    CHECK(v(0.5) == doctest::Approx(0.75));
    CHECK(v(0.25) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
    // power tail beyond the last node
    CHECK(v(0.99) < v(0.9));
    CHECK(v(0.999) / v(0.99) == doctest::Approx(std::pow(0.1, std::log(0.75 / 0.19) / std::log(5.0))).epsilon(1e-9));
    CHECK_THROWS_AS(Weight::from_table({{0, 1}, {0.5, 2}}), DomainError);
    CHECK_THROWS_AS(Weight::from_table({{0.5, 1}, {0.2, 0.5}}), DomainError);
    CHECK_THROWS_AS(Weight::from_table({{0, 1}}), DomainError);
}

TEST_CASE("associated weight dominates v and is comparable for standard weights") {
    for (double a : {0.5, 1.0}) {
        const Weight v = Weight::standard(a);
        for (double r : {0.0, 0.3, 0.9, 0.999, 1 - 1e-9}) {
            const double t = associated_weight(v, r);
            CHECK(t >= v(r) * (1 - 1e-12));
            CHECK(t <= 3.0 * v(r));
        }
    }
}

TEST_CASE("Bloch transfer") {
    const Weight v = Weight::standard(1.0);
    const Weight w = bloch_transfer(v);
    for (double r : {0.0, 0.5, 0.99}) CHECK(w(r) == doctest::Approx((1 - r) * v(r)).epsilon(1e-14));
}

TEST_CASE("lacunary primitive") {
    const Weight v = Weight::standard(1.0);
    CHECK(std::isfinite(v.lacunary_norm()));
    CHECK(v.lacunary_norm() >= 1.0);
    CHECK(v.lacunary_value(0.0) == 0.0);
    CHECK(v.lacunary_value(0.99) > v.lacunary_value(0.9));
    CHECK(v.dyadic_log_samples().size() == static_cast<std::size_t>(Weight::kDyadicSamples));
}
