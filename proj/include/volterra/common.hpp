#pragma once

// Shared vocabulary for the volterra library: the complex scalar type,
// numeric constants and the exception hierarchy used by every module.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace volterra {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Argument outside the open unit disc, or outside a declared parameter range.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A criterion was requested whose hypotheses are not met (non-normal weight,
/// unsupported space pair, ...).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Quadrature met a non-finite integrand sample.
class IntegrandError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A symbol whose derivative vanishes identically where it must not.
class DegenerateSymbolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text; carries a 1-based line/column position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : std::runtime_error(message + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Three-valued outcome of a boundary-limit test.
enum class Decision { holds, fails, undecided };

inline const char* to_string(Decision d) {
    switch (d) {
        case Decision::holds: return "holds";
        case Decision::fails: return "fails";
        case Decision::undecided: return "undecided";
    }
    return "undecided";
}

}  // namespace volterra
