#pragma once

// Analytic functions on the unit disc: an immutable expression DAG with
// symbolic differentiation and substitution, a compiled evaluator, and an
// optional truncated Taylor-series view.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "volterra/common.hpp"
#include "volterra/grid.hpp"

namespace volterra {

enum class NodeKind : std::uint8_t {
    constant,
    identity,
    add,
    sub,
    mul,
    div,
    neg,
    int_power,   // u^n, n integer (may be negative)
    real_power,  // principal branch u^delta = exp(delta * Log u)
    log,         // principal branch Log u
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind = NodeKind::constant;
    Complex value{};      // constant
    double exponent = 0;  // real_power
    int power = 0;        // int_power
    NodePtr lhs;
    NodePtr rhs;
};

/// Flattened DAG: each shared node appears once, children before parents.
class Program {
public:
    explicit Program(const NodePtr& root);

    Complex eval(Complex z) const;
    std::size_t size() const noexcept { return code_.size(); }

private:
    struct Instr {
        NodeKind kind;
        std::uint32_t a = 0;
        std::uint32_t b = 0;
        int power = 0;
        double exponent = 0;
        Complex value{};
    };
    std::vector<Instr> code_;
};

/// Truncated Taylor expansion about 0.
struct PowerSeries {
    std::vector<Complex> coefficients;

    Complex eval(Complex z) const;
    PowerSeries derivative() const;
    /// Ratio-test estimate of the truncation error on |z| <= radius, from the
    /// last 16 coefficients. Returns +inf when the ratio test fails.
    double tail_bound(double radius) const;
};

class AnalyticFunction {
public:
    /// The zero function.
    AnalyticFunction();

    static AnalyticFunction constant(Complex c);
    static AnalyticFunction identity();
    static AnalyticFunction monomial(int n);
    /// a + b z
    static AnalyticFunction affine(Complex a, Complex b);
    /// (1 - z)^delta, principal branch.
    static AnalyticFunction one_minus_z_pow(double delta);
    /// log(1/(1 - z)), principal branch.
    static AnalyticFunction log_one_over_one_minus_z();
    /// (a - z)/(1 - conj(a) z), |a| < 1.
    static AnalyticFunction mobius(Complex a);
    /// Series-only function (no symbol tree), e.g. a polynomial.
    static AnalyticFunction from_series(std::vector<Complex> coefficients);
    static AnalyticFunction from_node(NodePtr node);

    /// f(z); throws DomainError unless |z| < 1.
    Complex operator()(Complex z) const;
    /// f(z) without the domain check, for hot loops over known-interior points.
    Complex eval_unchecked(Complex z) const;

    AnalyticFunction derivative() const;
    /// this ∘ inner, by substituting inner for z in the symbol tree.
    AnalyticFunction compose(const AnalyticFunction& inner) const;
    AnalyticFunction pow(double exponent) const;
    AnalyticFunction log() const;

    bool has_symbol() const noexcept { return static_cast<bool>(symbol_); }
    const NodePtr& symbol() const noexcept { return symbol_; }
    bool has_series() const noexcept { return static_cast<bool>(series_); }
    const PowerSeries& series() const;
    /// Copy carrying a Taylor view of `terms` coefficients computed from the symbol.
    AnalyticFunction with_series(std::size_t terms = 256) const;

    /// True when the symbol simplifies to a constant.
    bool is_symbolic_constant() const;
    bool is_identity() const;
    std::string to_string() const;

    friend AnalyticFunction operator+(const AnalyticFunction& a, const AnalyticFunction& b);
    friend AnalyticFunction operator-(const AnalyticFunction& a, const AnalyticFunction& b);
    friend AnalyticFunction operator*(const AnalyticFunction& a, const AnalyticFunction& b);
    friend AnalyticFunction operator/(const AnalyticFunction& a, const AnalyticFunction& b);
    friend AnalyticFunction operator-(const AnalyticFunction& a);

private:
    void compile();
    NodePtr symbol_or_polynomial() const;

    NodePtr symbol_;
    std::shared_ptr<const Program> program_;
    std::shared_ptr<const PowerSeries> series_;
};

AnalyticFunction operator*(Complex c, const AnalyticFunction& f);

/// Symbolic derivative (free-function form).
AnalyticFunction derivative(const AnalyticFunction& f);

/// Taylor coefficients of a symbol tree by truncated series arithmetic.
/// Throws DomainError when a log or fractional power has a branch point at 0.
PowerSeries series_from_symbol(const NodePtr& node, std::size_t terms);

/// An analytic self-map of the disc with a sampled bound on sup|φ|.
class DiscSelfMap {
public:
    static DiscSelfMap identity();
    /// Samples |φ| on the grid; throws DomainError if any sample exceeds 1 + 1e-12.
    explicit DiscSelfMap(AnalyticFunction map, const GridSpec& grid = {});
    /// Map with a caller-certified bound (1 means boundary-touching).
    static DiscSelfMap with_bound(AnalyticFunction map, double certified_bound);

    Complex operator()(Complex z) const { return map_.eval_unchecked(z); }
    const AnalyticFunction& map() const noexcept { return map_; }
    double certified_bound() const noexcept { return bound_; }
    bool boundary_touching() const noexcept { return bound_ >= 1.0; }
    double sampled_sup() const noexcept { return sampled_sup_; }
    bool is_identity() const { return map_.is_identity(); }

private:
    DiscSelfMap() = default;
    AnalyticFunction map_;
    double bound_ = 1.0;
    double sampled_sup_ = 1.0;
};

/// (g∘φ)′ = (g′∘φ)·φ′ as a symbol tree.
AnalyticFunction compose_derivative(const AnalyticFunction& g, const DiscSelfMap& phi);

struct SchlichtReport {
    double max_value = 0;     // max of (1-|z|^2)|g''(z)/g'(z)| over the grid
    Complex argmax{};
    bool passes = true;       // max_value <= 6 + tolerance
    std::size_t skipped = 0;  // grid points where g' vanished
};

/// Necessary condition for univalence: a value above 6 certifies that g is not
/// univalent; passing is only consistent with univalence.
SchlichtReport schlicht_check(const AnalyticFunction& g, const DiscGrid& grid,
                              double tolerance = 1e-9);

}  // namespace volterra
