#include "volterra/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace volterra {

namespace {

// ---------------------------------------------------------------------------
// Node construction with light simplification (constant folding, 0/1 rules).

NodePtr make_const(Complex c) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::constant;
    n->value = c;
    return n;
}

const NodePtr& identity_node() {
    static const NodePtr node = [] {
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::identity;
        return NodePtr(n);
    }();
    return node;
}

bool constant_value(const NodePtr& n, Complex& out) {
    if (n->kind != NodeKind::constant) return false;
    out = n->value;
    return true;
}

NodePtr make_binary(NodeKind kind, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

Complex principal_power(Complex base, double exponent) {
    if (base == Complex{}) {
        return exponent > 0 ? Complex{} : Complex{std::numeric_limits<double>::infinity(), 0.0};
    }
    return std::exp(exponent * std::log(base));
}

Complex integer_power(Complex base, int n) {
    unsigned e = static_cast<unsigned>(n < 0 ? -static_cast<long>(n) : n);
    Complex result{1.0, 0.0};
    Complex b = base;
    while (e != 0) {
        if (e & 1u) result *= b;
        b *= b;
        e >>= 1u;
    }
    return n < 0 ? Complex{1.0, 0.0} / result : result;
}

NodePtr make_neg(NodePtr a);

NodePtr make_add(NodePtr a, NodePtr b) {
    Complex x, y;
    const bool ca = constant_value(a, x), cb = constant_value(b, y);
    if (ca && cb) return make_const(x + y);
    if (ca && x == Complex{}) return b;
    if (cb && y == Complex{}) return a;
    return make_binary(NodeKind::add, std::move(a), std::move(b));
}

NodePtr make_sub(NodePtr a, NodePtr b) {
    Complex x, y;
    const bool ca = constant_value(a, x), cb = constant_value(b, y);
    if (ca && cb) return make_const(x - y);
    if (cb && y == Complex{}) return a;
    if (ca && x == Complex{}) return make_neg(std::move(b));
    return make_binary(NodeKind::sub, std::move(a), std::move(b));
}

NodePtr make_mul(NodePtr a, NodePtr b) {
    Complex x, y;
    const bool ca = constant_value(a, x), cb = constant_value(b, y);
    if (ca && cb) return make_const(x * y);
    if ((ca && x == Complex{}) || (cb && y == Complex{})) return make_const({});
    if (ca && x == Complex{1.0, 0.0}) return b;
    if (cb && y == Complex{1.0, 0.0}) return a;
    if (ca && x == Complex{-1.0, 0.0}) return make_neg(std::move(b));
    if (cb && y == Complex{-1.0, 0.0}) return make_neg(std::move(a));
    return make_binary(NodeKind::mul, std::move(a), std::move(b));
}

NodePtr make_div(NodePtr a, NodePtr b) {
    Complex x, y;
    const bool ca = constant_value(a, x), cb = constant_value(b, y);
    if (cb && y == Complex{}) throw DomainError("division by the constant zero");
    if (ca && cb) return make_const(x / y);
    if (ca && x == Complex{}) return make_const({});
    if (cb && y == Complex{1.0, 0.0}) return a;
    return make_binary(NodeKind::div, std::move(a), std::move(b));
}

NodePtr make_neg(NodePtr a) {
    Complex x;
    if (constant_value(a, x)) return make_const(-x);
    if (a->kind == NodeKind::neg) return a->lhs;
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::neg;
    n->lhs = std::move(a);
    return n;
}

NodePtr make_int_power(NodePtr u, int power) {
    if (power == 0) return make_const({1.0, 0.0});
    if (power == 1) return u;
    Complex x;
    if (constant_value(u, x)) {
        if (x == Complex{} && power < 0) throw DomainError("zero raised to a negative power");
        return make_const(integer_power(x, power));
    }
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::int_power;
    n->power = power;
    n->lhs = std::move(u);
    return n;
}

NodePtr make_real_power(NodePtr u, double exponent) {
    const double rounded = std::round(exponent);
    if (std::abs(exponent - rounded) < 1e-12 && std::abs(rounded) < 1e6)
        return make_int_power(std::move(u), static_cast<int>(rounded));
    Complex x;
    if (constant_value(u, x)) return make_const(principal_power(x, exponent));
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::real_power;
    n->exponent = exponent;
    n->lhs = std::move(u);
    return n;
}

NodePtr make_log(NodePtr u) {
    Complex x;
    if (constant_value(u, x)) {
        if (x == Complex{}) throw DomainError("logarithm of the constant zero");
        return make_const(std::log(x));
    }
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::log;
    n->lhs = std::move(u);
    return n;
}

// ---------------------------------------------------------------------------
// Differentiation and substitution, memoised on node identity so shared
// subtrees stay shared.

using Memo = std::unordered_map<const Node*, NodePtr>;

NodePtr differentiate(const NodePtr& n, Memo& memo) {
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    NodePtr d;
    switch (n->kind) {
        case NodeKind::constant: d = make_const({}); break;
        case NodeKind::identity: d = make_const({1.0, 0.0}); break;
        case NodeKind::add: d = make_add(differentiate(n->lhs, memo), differentiate(n->rhs, memo)); break;
        case NodeKind::sub: d = make_sub(differentiate(n->lhs, memo), differentiate(n->rhs, memo)); break;
        case NodeKind::neg: d = make_neg(differentiate(n->lhs, memo)); break;
        case NodeKind::mul:
            d = make_add(make_mul(differentiate(n->lhs, memo), n->rhs),
                         make_mul(n->lhs, differentiate(n->rhs, memo)));
            break;
        case NodeKind::div: {
            const NodePtr da = differentiate(n->lhs, memo);
            const NodePtr db = differentiate(n->rhs, memo);
            d = make_sub(make_div(da, n->rhs), make_div(make_mul(n->lhs, db), make_int_power(n->rhs, 2)));
            break;
        }
        case NodeKind::int_power:
            d = make_mul(make_mul(make_const(static_cast<double>(n->power)),
                                  make_int_power(n->lhs, n->power - 1)),
                         differentiate(n->lhs, memo));
            break;
        case NodeKind::real_power:
            d = make_mul(make_mul(make_const(n->exponent), make_real_power(n->lhs, n->exponent - 1.0)),
                         differentiate(n->lhs, memo));
            break;
        case NodeKind::log: d = make_div(differentiate(n->lhs, memo), n->lhs); break;
    }
    memo.emplace(n.get(), d);
    return d;
}

NodePtr substitute(const NodePtr& n, const NodePtr& inner, Memo& memo) {
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    NodePtr s;
    switch (n->kind) {
        case NodeKind::constant: s = n; break;
        case NodeKind::identity: s = inner; break;
        case NodeKind::add: s = make_add(substitute(n->lhs, inner, memo), substitute(n->rhs, inner, memo)); break;
        case NodeKind::sub: s = make_sub(substitute(n->lhs, inner, memo), substitute(n->rhs, inner, memo)); break;
        case NodeKind::mul: s = make_mul(substitute(n->lhs, inner, memo), substitute(n->rhs, inner, memo)); break;
        case NodeKind::div: s = make_div(substitute(n->lhs, inner, memo), substitute(n->rhs, inner, memo)); break;
        case NodeKind::neg: s = make_neg(substitute(n->lhs, inner, memo)); break;
        case NodeKind::int_power: s = make_int_power(substitute(n->lhs, inner, memo), n->power); break;
        case NodeKind::real_power: s = make_real_power(substitute(n->lhs, inner, memo), n->exponent); break;
        case NodeKind::log: s = make_log(substitute(n->lhs, inner, memo)); break;
    }
    memo.emplace(n.get(), s);
    return s;
}

// ---------------------------------------------------------------------------
// Truncated series arithmetic.

using Coeffs = std::vector<Complex>;

Coeffs series_mul(const Coeffs& a, const Coeffs& b, std::size_t terms) {
    Coeffs c(terms);
    for (std::size_t i = 0; i < std::min(terms, a.size()); ++i) {
        if (a[i] == Complex{}) continue;
        for (std::size_t j = 0; i + j < terms && j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

Coeffs series_div(const Coeffs& a, const Coeffs& b, std::size_t terms) {
    if (b.empty() || b[0] == Complex{})
        throw DomainError("series division by a function vanishing at 0");
    Coeffs q(terms);
    for (std::size_t n = 0; n < terms; ++n) {
        Complex acc = n < a.size() ? a[n] : Complex{};
        for (std::size_t k = 1; k <= n && k < b.size(); ++k) acc -= b[k] * q[n - k];
        q[n] = acc / b[0];
    }
    return q;
}

Coeffs series_real_power(const Coeffs& u, double delta, std::size_t terms) {
    if (u.empty() || u[0] == Complex{})
        throw DomainError("fractional power with a branch point at 0 has no Taylor series");
    Coeffs w(terms);
    w[0] = principal_power(u[0], delta);
    for (std::size_t n = 1; n < terms; ++n) {
        Complex acc{};
        for (std::size_t k = 1; k <= n && k < u.size(); ++k)
            acc += ((delta + 1.0) * static_cast<double>(k) - static_cast<double>(n)) * u[k] * w[n - k];
        w[n] = acc / (static_cast<double>(n) * u[0]);
    }
    return w;
}

Coeffs series_int_power(const Coeffs& u, int power, std::size_t terms) {
    Coeffs result(terms);
    result[0] = 1.0;
    Coeffs base = u;
    base.resize(terms);
    unsigned e = static_cast<unsigned>(power < 0 ? -static_cast<long>(power) : power);
    while (e != 0) {
        if (e & 1u) result = series_mul(result, base, terms);
        e >>= 1u;
        if (e != 0) base = series_mul(base, base, terms);
    }
    if (power < 0) {
        Coeffs one(terms);
        one[0] = 1.0;
        return series_div(one, result, terms);
    }
    return result;
}

Coeffs series_log(const Coeffs& u, std::size_t terms) {
    if (u.empty() || u[0] == Complex{})
        throw DomainError("logarithm with a branch point at 0 has no Taylor series");
    Coeffs du(terms);
    for (std::size_t n = 1; n < u.size() && n <= terms; ++n) du[n - 1] = static_cast<double>(n) * u[n];
    const Coeffs q = series_div(du, u, terms);
    Coeffs l(terms);
    l[0] = std::log(u[0]);
    for (std::size_t n = 1; n < terms; ++n) l[n] = q[n - 1] / static_cast<double>(n);
    return l;
}

using SeriesMemo = std::unordered_map<const Node*, Coeffs>;

const Coeffs& series_of(const NodePtr& n, std::size_t terms, SeriesMemo& memo) {
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    Coeffs c(terms);
    switch (n->kind) {
        case NodeKind::constant: c[0] = n->value; break;
        case NodeKind::identity:
            if (terms > 1) c[1] = 1.0;
            break;
        case NodeKind::add:
        case NodeKind::sub: {
            const Coeffs& a = series_of(n->lhs, terms, memo);
            const Coeffs& b = series_of(n->rhs, terms, memo);
            for (std::size_t i = 0; i < terms; ++i) c[i] = n->kind == NodeKind::add ? a[i] + b[i] : a[i] - b[i];
            break;
        }
        case NodeKind::neg: {
            const Coeffs& a = series_of(n->lhs, terms, memo);
            for (std::size_t i = 0; i < terms; ++i) c[i] = -a[i];
            break;
        }
        case NodeKind::mul: c = series_mul(series_of(n->lhs, terms, memo), series_of(n->rhs, terms, memo), terms); break;
        case NodeKind::div: c = series_div(series_of(n->lhs, terms, memo), series_of(n->rhs, terms, memo), terms); break;
        case NodeKind::int_power: c = series_int_power(series_of(n->lhs, terms, memo), n->power, terms); break;
        case NodeKind::real_power: c = series_real_power(series_of(n->lhs, terms, memo), n->exponent, terms); break;
        case NodeKind::log: c = series_log(series_of(n->lhs, terms, memo), terms); break;
    }
    return memo.emplace(n.get(), std::move(c)).first->second;
}

// ---------------------------------------------------------------------------
// Printing.

int precedence(const Node& n) {
    switch (n.kind) {
        case NodeKind::add:
        case NodeKind::sub: return 1;
        case NodeKind::mul:
        case NodeKind::div: return 2;
        case NodeKind::neg: return 3;
        case NodeKind::int_power:
        case NodeKind::real_power: return 4;
        default: return 5;
    }
}

std::string format_number(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

std::string format_complex(Complex c) {
    if (c.imag() == 0.0) return format_number(c.real());
    if (c.real() == 0.0) return format_number(c.imag()) + "*i";
    return "(" + format_number(c.real()) + (c.imag() < 0 ? "-" : "+") + format_number(std::abs(c.imag())) +
           "*i)";
}

std::string print(const NodePtr& n) {
    auto wrap = [&](const NodePtr& child, int min_prec) {
        std::string s = print(child);
        return precedence(*child) < min_prec ? "(" + s + ")" : s;
    };
    switch (n->kind) {
        case NodeKind::constant: {
            std::string s = format_complex(n->value);
            return (n->value.real() < 0 && n->value.imag() == 0.0) ? "(" + s + ")" : s;
        }
        case NodeKind::identity: return "z";
        case NodeKind::add: return wrap(n->lhs, 1) + "+" + wrap(n->rhs, 1);
        case NodeKind::sub: return wrap(n->lhs, 1) + "-" + wrap(n->rhs, 2);
        case NodeKind::mul: return wrap(n->lhs, 2) + "*" + wrap(n->rhs, 2);
        case NodeKind::div: return wrap(n->lhs, 2) + "/" + wrap(n->rhs, 3);
        case NodeKind::neg: return "-" + wrap(n->lhs, 3);
        case NodeKind::int_power: return wrap(n->lhs, 5) + "^" + std::to_string(n->power);
        case NodeKind::real_power: return wrap(n->lhs, 5) + "^" + format_number(n->exponent);
        case NodeKind::log: return "log(" + print(n->lhs) + ")";
    }
    return "?";
}

}  // namespace

// ---------------------------------------------------------------------------
// Program

Program::Program(const NodePtr& root) {
    std::unordered_map<const Node*, std::uint32_t> index;
    // Iterative post-order so deep trees cannot overflow the call stack.
    std::vector<std::pair<const Node*, bool>> stack{{root.get(), false}};
    while (!stack.empty()) {
        auto [node, expanded] = stack.back();
        stack.pop_back();
        if (index.count(node)) continue;
        if (!expanded) {
            stack.emplace_back(node, true);
            if (node->rhs) stack.emplace_back(node->rhs.get(), false);
            if (node->lhs) stack.emplace_back(node->lhs.get(), false);
            continue;
        }
        Instr ins{node->kind};
        if (node->lhs) ins.a = index.at(node->lhs.get());
        if (node->rhs) ins.b = index.at(node->rhs.get());
        ins.power = node->power;
        ins.exponent = node->exponent;
        ins.value = node->value;
        index.emplace(node, static_cast<std::uint32_t>(code_.size()));
        code_.push_back(ins);
    }
}

Complex Program::eval(Complex z) const {
    constexpr std::size_t kInline = 64;
    std::array<Complex, kInline> inline_slots;
    std::vector<Complex> heap_slots;
    Complex* s = inline_slots.data();
    if (code_.size() > kInline) {
        heap_slots.resize(code_.size());
        s = heap_slots.data();
    }
    for (std::size_t i = 0; i < code_.size(); ++i) {
        const Instr& in = code_[i];
        switch (in.kind) {
            case NodeKind::constant: s[i] = in.value; break;
            case NodeKind::identity: s[i] = z; break;
            case NodeKind::add: s[i] = s[in.a] + s[in.b]; break;
            case NodeKind::sub: s[i] = s[in.a] - s[in.b]; break;
            case NodeKind::mul: s[i] = s[in.a] * s[in.b]; break;
            case NodeKind::div: s[i] = s[in.a] / s[in.b]; break;
            case NodeKind::neg: s[i] = -s[in.a]; break;
            case NodeKind::int_power: s[i] = integer_power(s[in.a], in.power); break;
            case NodeKind::real_power: s[i] = principal_power(s[in.a], in.exponent); break;
            case NodeKind::log: s[i] = std::log(s[in.a]); break;
        }
    }
    return s[code_.size() - 1];
}

// ---------------------------------------------------------------------------
// PowerSeries

Complex PowerSeries::eval(Complex z) const {
    Complex acc{};
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * z + *it;
    return acc;
}

PowerSeries PowerSeries::derivative() const {
    PowerSeries d;
    if (coefficients.size() <= 1) {
        d.coefficients = {Complex{}};
        return d;
    }
    d.coefficients.resize(coefficients.size() - 1);
    for (std::size_t n = 1; n < coefficients.size(); ++n)
        d.coefficients[n - 1] = static_cast<double>(n) * coefficients[n];
    return d;
}

double PowerSeries::tail_bound(double radius) const {
    const std::size_t n = coefficients.size();
    if (n < 17) return 0.0;
    double ratio = 0.0;
    bool all_zero = true;
    for (std::size_t k = n - 17; k + 1 < n; ++k) {
        const double a = std::abs(coefficients[k]);
        const double b = std::abs(coefficients[k + 1]);
        if (a > 0.0) {
            ratio = std::max(ratio, b / a);
            all_zero = false;
        } else if (b > 0.0) {
            return std::numeric_limits<double>::infinity();
        }
    }
    if (all_zero) return 0.0;
    const double q = ratio * radius;
    if (q >= 1.0) return std::numeric_limits<double>::infinity();
    const double last = std::abs(coefficients[n - 1]) * std::pow(radius, static_cast<double>(n - 1));
    return 2.0 * last * q / (1.0 - q);
}

PowerSeries series_from_symbol(const NodePtr& node, std::size_t terms) {
    if (terms == 0) throw DomainError("series needs at least one term");
    SeriesMemo memo;
    PowerSeries s;
    s.coefficients = series_of(node, terms, memo);
    return s;
}

// ---------------------------------------------------------------------------
// AnalyticFunction

AnalyticFunction::AnalyticFunction() : symbol_(make_const({})) { compile(); }

AnalyticFunction AnalyticFunction::from_node(NodePtr node) {
    AnalyticFunction f;
    f.symbol_ = std::move(node);
    f.compile();
    return f;
}

AnalyticFunction AnalyticFunction::constant(Complex c) { return from_node(make_const(c)); }
AnalyticFunction AnalyticFunction::identity() { return from_node(identity_node()); }
AnalyticFunction AnalyticFunction::monomial(int n) {
    if (n < 0) throw DomainError("monomial degree must be nonnegative");
    return from_node(make_int_power(identity_node(), n));
}
AnalyticFunction AnalyticFunction::affine(Complex a, Complex b) {
    return from_node(make_add(make_const(a), make_mul(make_const(b), identity_node())));
}
AnalyticFunction AnalyticFunction::one_minus_z_pow(double delta) {
    return from_node(make_real_power(make_sub(make_const(1.0), identity_node()), delta));
}
AnalyticFunction AnalyticFunction::log_one_over_one_minus_z() {
    return from_node(make_log(make_div(make_const(1.0), make_sub(make_const(1.0), identity_node()))));
}
AnalyticFunction AnalyticFunction::mobius(Complex a) {
    if (std::abs(a) >= 1.0) throw DomainError("Mobius parameter must lie in the open disc");
    return from_node(make_div(make_sub(make_const(a), identity_node()),
                              make_sub(make_const(1.0), make_mul(make_const(std::conj(a)), identity_node()))));
}

AnalyticFunction AnalyticFunction::from_series(std::vector<Complex> coefficients) {
    if (coefficients.empty()) coefficients.push_back(Complex{});
    AnalyticFunction f;
    f.symbol_.reset();
    f.program_.reset();
    f.series_ = std::make_shared<const PowerSeries>(PowerSeries{std::move(coefficients)});
    return f;
}

void AnalyticFunction::compile() {
    program_ = symbol_ ? std::make_shared<const Program>(symbol_) : nullptr;
}

Complex AnalyticFunction::operator()(Complex z) const {
    if (!(std::abs(z) < 1.0)) throw DomainError("evaluation point must satisfy |z| < 1");
    return eval_unchecked(z);
}

Complex AnalyticFunction::eval_unchecked(Complex z) const {
    return program_ ? program_->eval(z) : series_->eval(z);
}

const PowerSeries& AnalyticFunction::series() const {
    if (!series_) throw std::logic_error("no series view attached; use with_series()");
    return *series_;
}

AnalyticFunction AnalyticFunction::with_series(std::size_t terms) const {
    AnalyticFunction f = *this;
    if (symbol_) f.series_ = std::make_shared<const PowerSeries>(series_from_symbol(symbol_, terms));
    return f;
}

NodePtr AnalyticFunction::symbol_or_polynomial() const {
    if (symbol_) return symbol_;
    // Horner form of the series view.
    const auto& c = series_->coefficients;
    NodePtr acc = make_const(c.back());
    for (std::size_t k = c.size() - 1; k-- > 0;)
        acc = make_add(make_const(c[k]), make_mul(identity_node(), acc));
    return acc;
}

AnalyticFunction AnalyticFunction::derivative() const {
    if (!symbol_) {
        AnalyticFunction f;
        f.symbol_.reset();
        f.program_.reset();
        f.series_ = std::make_shared<const PowerSeries>(series_->derivative());
        return f;
    }
    Memo memo;
    AnalyticFunction d = from_node(differentiate(symbol_, memo));
    if (series_) d.series_ = std::make_shared<const PowerSeries>(series_->derivative());
    return d;
}

AnalyticFunction AnalyticFunction::compose(const AnalyticFunction& inner) const {
    Memo memo;
    return from_node(substitute(symbol_or_polynomial(), inner.symbol_or_polynomial(), memo));
}

AnalyticFunction AnalyticFunction::pow(double exponent) const {
    return from_node(make_real_power(symbol_or_polynomial(), exponent));
}

AnalyticFunction AnalyticFunction::log() const { return from_node(make_log(symbol_or_polynomial())); }

bool AnalyticFunction::is_symbolic_constant() const {
    if (symbol_) return symbol_->kind == NodeKind::constant;
    const auto& c = series_->coefficients;
    return std::all_of(c.begin() + 1, c.end(), [](Complex x) { return x == Complex{}; });
}

bool AnalyticFunction::is_identity() const { return symbol_ && symbol_->kind == NodeKind::identity; }

std::string AnalyticFunction::to_string() const {
    if (symbol_) return print(symbol_);
    return "series[" + std::to_string(series_->coefficients.size()) + " terms]";
}

AnalyticFunction operator+(const AnalyticFunction& a, const AnalyticFunction& b) {
    return AnalyticFunction::from_node(make_add(a.symbol_or_polynomial(), b.symbol_or_polynomial()));
}
AnalyticFunction operator-(const AnalyticFunction& a, const AnalyticFunction& b) {
    return AnalyticFunction::from_node(make_sub(a.symbol_or_polynomial(), b.symbol_or_polynomial()));
}
AnalyticFunction operator*(const AnalyticFunction& a, const AnalyticFunction& b) {
    return AnalyticFunction::from_node(make_mul(a.symbol_or_polynomial(), b.symbol_or_polynomial()));
}
AnalyticFunction operator/(const AnalyticFunction& a, const AnalyticFunction& b) {
    return AnalyticFunction::from_node(make_div(a.symbol_or_polynomial(), b.symbol_or_polynomial()));
}
AnalyticFunction operator-(const AnalyticFunction& a) {
    return AnalyticFunction::from_node(make_neg(a.symbol_or_polynomial()));
}
AnalyticFunction operator*(Complex c, const AnalyticFunction& f) { return AnalyticFunction::constant(c) * f; }

AnalyticFunction derivative(const AnalyticFunction& f) { return f.derivative(); }

// ---------------------------------------------------------------------------
// DiscSelfMap

DiscSelfMap DiscSelfMap::identity() {
    DiscSelfMap m;
    m.map_ = AnalyticFunction::identity();
    m.bound_ = 1.0;
    m.sampled_sup_ = 1.0;
    return m;
}

DiscSelfMap DiscSelfMap::with_bound(AnalyticFunction map, double certified_bound) {
    if (!(certified_bound >= 0.0 && certified_bound <= 1.0))
        throw DomainError("certified bound must lie in [0, 1]");
    DiscSelfMap m;
    m.map_ = std::move(map);
    m.bound_ = certified_bound;
    m.sampled_sup_ = certified_bound;
    return m;
}

DiscSelfMap::DiscSelfMap(AnalyticFunction map, const GridSpec& spec) : map_(std::move(map)) {
    const DiscGrid grid(spec);
    const AnalyticFunction dmap = map_.derivative();
    double sup = 0.0;
    for (std::size_t k = 0; k < grid.ring_count(); ++k)
        for (std::size_t m = 0; m < grid.angle_count(); ++m) {
            const double a = std::abs(map_.eval_unchecked(grid.point(k, m)));
            if (!std::isfinite(a)) throw DomainError("self-map is not finite on the disc");
            sup = std::max(sup, a);
        }
    if (sup > 1.0 + 1e-12) throw DomainError("map leaves the unit disc: sampled |phi| = " + std::to_string(sup));
    // Outer ring plus a mean-value allowance for the unsampled annulus.
    const std::size_t outer = grid.ring_count() - 1;
    double outer_sup = 0.0, outer_slope = 0.0;
    for (std::size_t m = 0; m < grid.angle_count(); ++m) {
        outer_sup = std::max(outer_sup, std::abs(map_.eval_unchecked(grid.point(outer, m))));
        outer_slope = std::max(outer_slope, std::abs(dmap.eval_unchecked(grid.point(outer, m))));
    }
    sampled_sup_ = sup;
    const double allowance = std::max(sup, outer_sup + 2.0 * (1.0 - grid.r_max()) * outer_slope);
    bound_ = allowance >= 1.0 - 1e-6 ? 1.0 : allowance;
}

AnalyticFunction compose_derivative(const AnalyticFunction& g, const DiscSelfMap& phi) {
    return g.derivative().compose(phi.map()) * phi.map().derivative();
}

// ---------------------------------------------------------------------------

SchlichtReport schlicht_check(const AnalyticFunction& g, const DiscGrid& grid, double tolerance) {
    const AnalyticFunction g1 = g.derivative();
    if (g1.has_symbol() && g1.symbol()->kind == NodeKind::constant && g1.symbol()->value == Complex{})
        throw DegenerateSymbolError("g' vanishes identically");
    const AnalyticFunction g2 = g1.derivative();
    SchlichtReport report;
    std::size_t used = 0;
    for (std::size_t k = 0; k < grid.ring_count(); ++k) {
        const double r = grid.radii()[k];
        const double factor = (1.0 - r) * (1.0 + r);
        for (std::size_t m = 0; m < grid.angle_count(); ++m) {
            const Complex z = grid.point(k, m);
            const Complex d1 = g1.eval_unchecked(z);
            if (!(std::abs(d1) > 1e-300) || !std::isfinite(std::abs(d1))) {
                ++report.skipped;
                continue;
            }
            const double value = factor * std::abs(g2.eval_unchecked(z) / d1);
            if (!std::isfinite(value)) {
                ++report.skipped;
                continue;
            }
            ++used;
            if (value > report.max_value) {
                report.max_value = value;
                report.argmax = z;
            }
        }
    }
    if (used == 0) throw DegenerateSymbolError("g' vanishes at every grid point");
    report.passes = report.max_value <= 6.0 + tolerance;
    return report;
}

}  // namespace volterra
