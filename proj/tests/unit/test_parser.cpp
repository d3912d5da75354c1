#include <doctest.h>

#include "volterra/expression_parser.hpp"
#include "volterra/problem.hpp"

using namespace volterra;

namespace {

bool same_on_disc(const AnalyticFunction& a, const AnalyticFunction& b) {
    for (Complex z : {Complex(0.1, 0.2), Complex(-0.5, 0.3), Complex(0.7, -0.6), Complex(0.0, 0.0)})
        if (std::abs(a(z) - b(z)) > 1e-13 * (1 + std::abs(b(z)))) return false;
    return true;
}

std::size_t error_column(const std::string& text) {
    try {
        parse_expression(text);
    } catch (const ParseError& err) {
        return err.column();
    }
    return 0;
}

}  // namespace

TEST_CASE("expressions match the built-in symbols") {
    CHECK(same_on_disc(parse_expression("log(1/(1-z))"), AnalyticFunction::log_one_over_one_minus_z()));
    CHECK(same_on_disc(parse_expression("(1-z)^0.3"), AnalyticFunction::one_minus_z_pow(0.3)));
    CHECK(same_on_disc(parse_expression("pow(1-z, 0.3)"), AnalyticFunction::one_minus_z_pow(0.3)));
    CHECK(same_on_disc(parse_expression("z"), AnalyticFunction::identity()));
    CHECK(parse_expression("z").is_identity());
    CHECK(parse_expression(" 1 * z + 0 ").is_identity());
}

TEST_CASE("precedence and associativity") {
    const Complex z(0.3, 0.1);
    CHECK(parse_expression("2^3^2")(z) == Complex(512.0));
    CHECK(std::abs(parse_expression("-z^2")(z) + z * z) < 1e-15);
    CHECK(std::abs(parse_expression("1-z-z")(z) - (1.0 - 2.0 * z)) < 1e-15);
    CHECK(std::abs(parse_expression("z/2/2")(z) - z / 4.0) < 1e-15);
    CHECK(std::abs(parse_expression("2*z^2/2")(z) - z * z) < 1e-15);
    CHECK(std::abs(parse_expression("i*pi")(z) - Complex(0, kPi)) < 1e-15);
    CHECK(std::abs(parse_expression("1.5e-1*z")(z) - 0.15 * z) < 1e-15);
}

TEST_CASE("principal branches") {
    const AnalyticFunction f = parse_expression("(1-z)^0.5");
    CHECK(std::abs(f(Complex(0.0, 0.0)) - 1.0) < 1e-15);
    CHECK(f(Complex(0.9, 0.05)).real() > 0);
    CHECK(f(Complex(0.9, -0.05)).real() > 0);
}

TEST_CASE("parse errors carry columns") {
    CHECK(error_column("z+*2") == 3);
    CHECK(error_column("log(z") == 6);
    CHECK(error_column("foo(z)") == 1);
    CHECK(error_column("z^z") != 0);
    CHECK(error_column("") != 0);
    CHECK(error_column("(1-z)^0.3 )") != 0);
}

TEST_CASE("problem documents") {
    const ProblemDefinition p = parse_problem(R"({"g": "z", "alpha": 0.5})");
    CHECK(p.classical());
    CHECK(p.phi_identity);
    CHECK(*p.alpha == 0.5);

    const ProblemDefinition q = parse_problem(
        R"({"g": "(1-z)^0.3", "phi": "z/2",
            "source": {"space": "bergman", "p": 1, "alpha": 0},
            "target": {"space": "hv0", "weight": {"standard": 1}},
            "grid": {"J": 12, "angles": 64}, "tol": 1e-5, "seed": 3, "n_trials": 10})");
    CHECK_FALSE(q.classical());
    CHECK_FALSE(q.phi_identity);
    CHECK(q.source->kind() == SpaceKind::bergman);
    CHECK(q.target->kind() == SpaceKind::hv_0);
    CHECK(q.grid.depth == 12);
    CHECK(q.grid.n_angles == 64);
    CHECK(q.seed == 3);
    CHECK(q.n_trials == 10);

    const ProblemDefinition t = parse_problem(R"({"g": "z", "weight": {"table": [[0, 1], [0.5, 0.75], [0.9, 0.19]]}})");
    CHECK((*t.weight)(0.5) == doctest::Approx(0.75));
}

TEST_CASE("problem errors point at the offending field") {
    auto where = [](const std::string& text) -> std::pair<std::size_t, std::size_t> {
        try {
            parse_problem(text);
        } catch (const ParseError& err) {
            return {err.line(), err.column()};
        }
        return {0, 0};
    };
    CHECK(where("{\"g\": \"z\",\n \"bogus\": 1}") == std::pair<std::size_t, std::size_t>{2, 2});
    CHECK(where("{\"g\": \"z+*2\"}") == std::pair<std::size_t, std::size_t>{1, 10});
    CHECK(where("{\"g\": \"z\",\n \"alpha\": -1}").first == 2);
    CHECK(where("{\"g\": \"z\",\n\n \"source\": {\"space\": \"dirichlet\"}}").first == 3);
    CHECK(where("{\"g\": \"z\", ").first == 1);
    CHECK(where("{\"phi\": \"z\"}").first != 0);
    CHECK(where("{\"g\": \"z\", \"grid\": {\"J\": 2}}").first != 0);
    CHECK(where("{\"g\": \"z\", \"weight\": {\"table\": [[0, 1], [0.5, 2]]}}").first != 0);
}
