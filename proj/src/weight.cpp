#include "volterra/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace volterra {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxOctave = 52.0;  // r = 1 - 2^{-52} is the last representable dyadic radius

// Radius from an octave coordinate u: r = 1 - 2^{-u}.
double radius_at(double u) { return 1.0 - std::exp2(-u); }

template <class F>
double golden_max(F&& h, double a, double b, int iterations = 60) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = h(c), fd = h(d);
    for (int i = 0; i < iterations && b - a > 1e-12; ++i) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = h(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = h(d);
        }
    }
    return std::max(fc, fd);
}

double log_one_minus_r_squared(double r) { return std::log((1.0 - r) * (1.0 + r)); }

}  // namespace

struct Weight::Impl {
    std::string description;
    std::function<double(double)> log_v;
    std::optional<double> exponent;
    std::vector<double> dyadic;
    std::vector<MonomialSup> monomials;
    std::vector<double> lacunary_log_coeff;  // log M_v(2^k), k = 0..kLacunaryTerms-1
    double lacunary_norm = 1.0;

    static constexpr int kLacunaryTerms = 41;

    double monomial_log_sup(double n) const {
        if (exponent) {
            const double a = *exponent;
            if (n <= 0.0) return 0.0;
            return a * std::log(2.0 * a / (n + 2.0 * a)) + 0.5 * n * std::log(n / (n + 2.0 * a));
        }
        auto h = [&](double u) {
            const double r = radius_at(u);
            const double lv = log_v(r);
            if (n == 0.0) return lv;
            return lv + n * std::log1p(-(1.0 - r));
        };
        constexpr double step = 0.125;
        double best_u = 0.0, best = h(0.0);
        if (n > 0.0) best = -kInf;
        for (double u = step; u <= kMaxOctave; u += step) {
            const double value = h(u);
            if (value > best) {
                best = value;
                best_u = u;
            }
        }
        const double lo = std::max(0.0, best_u - step), hi = std::min(kMaxOctave, best_u + step);
        return std::max(best, golden_max(h, lo, hi));
    }
};

Weight Weight::build(std::string description, std::function<double(double)> log_v,
                     std::optional<double> exponent) {
    auto impl = std::make_shared<Impl>();
    impl->description = std::move(description);
    impl->log_v = std::move(log_v);
    impl->exponent = exponent;

    impl->dyadic.resize(kDyadicSamples);
    for (int n = 1; n <= kDyadicSamples; ++n) impl->dyadic[n - 1] = impl->log_v(1.0 - std::ldexp(1.0, -n));

    for (int n = 0; n <= 64; ++n) impl->monomials.push_back({double(n), impl->monomial_log_sup(n)});
    for (double n = 64.0; n < std::ldexp(1.0, 52);) {
        n = std::ceil(n * 1.04);
        impl->monomials.push_back({n, impl->monomial_log_sup(n)});
    }

    for (int k = 0; k < Impl::kLacunaryTerms; ++k)
        impl->lacunary_log_coeff.push_back(impl->monomial_log_sup(std::ldexp(1.0, k)));
    // Certified bound for sup_r v(r) F(r), F(r) = sum_k r^{n_k}/M(n_k):
    // F increases and v does not, so each cell [r_l, r_{l+1}] is bounded by
    // v(r_l) F(r_{l+1}); the final cell uses F(1).
    auto lacunary_derivative = [&](double r) {
        double sum = 0.0;
        for (int k = 0; k < Impl::kLacunaryTerms; ++k) {
            const double n = std::ldexp(1.0, k);
            const double log_r = r >= 1.0 ? 0.0 : std::log1p(-(1.0 - r));
            sum += std::exp(n * log_r - impl->lacunary_log_coeff[k]);
        }
        return sum;
    };
    double bound = 0.0;
    constexpr double cell = 1.0 / 16.0;
    for (double u = 0.0; u < kMaxOctave; u += cell) {
        const double r0 = radius_at(u), r1 = radius_at(u + cell);
        bound = std::max(bound, std::exp(impl->log_v(r0)) * lacunary_derivative(r1));
    }
    bound = std::max(bound, std::exp(impl->log_v(radius_at(kMaxOctave))) * lacunary_derivative(1.0));
    impl->lacunary_norm = bound;
    return Weight(std::move(impl));
}

Weight Weight::standard(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("standard weight exponent must be positive");
    std::ostringstream name;
    name << "v_" << alpha << "(r) = (1-r^2)^" << alpha;
    return build(name.str(), [alpha](double r) { return alpha * log_one_minus_r_squared(r); }, alpha);
}

Weight Weight::from_log_profile(std::string description, std::function<double(double)> log_v) {
    return build(std::move(description), std::move(log_v), std::nullopt);
}

Weight Weight::from_profile(std::string description, std::function<double(double)> v) {
    return build(std::move(description), [v = std::move(v)](double r) { return std::log(v(r)); }, std::nullopt);
}

Weight Weight::from_table(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw DomainError("weight table needs at least two samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto [r, v] = samples[i];
        if (!(r >= 0.0 && r < 1.0)) throw DomainError("weight table radii must lie in [0, 1)");
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("weight table values must be positive and finite");
        if (i > 0 && !(r > samples[i - 1].first)) throw DomainError("weight table radii must increase strictly");
    }
    std::vector<double> rs, ls;
    for (const auto& [r, v] : samples) {
        rs.push_back(r);
        ls.push_back(std::log(v));
    }
    const std::size_t last = rs.size() - 1;
    const double tail = (ls[last] - ls[last - 1]) / (std::log(1.0 - rs[last]) - std::log(1.0 - rs[last - 1]));
    if (!(tail > 0.0)) throw DomainError("weight table must decrease toward the boundary at its last nodes");
    auto log_v = [rs, ls, tail, last](double r) {
        if (r <= rs.front()) return ls.front();
        if (r >= rs[last]) return ls[last] + tail * (std::log(1.0 - r) - std::log(1.0 - rs[last]));
        const auto it = std::upper_bound(rs.begin(), rs.end(), r);
        const std::size_t j = static_cast<std::size_t>(it - rs.begin());
        const double t = (r - rs[j - 1]) / (rs[j] - rs[j - 1]);
        return ls[j - 1] + t * (ls[j] - ls[j - 1]);
    };
    std::ostringstream name;
    name << "table[" << samples.size() << " nodes]";
    return build(name.str(), std::move(log_v), std::nullopt);
}

double Weight::operator()(double r) const { return std::exp(log_value(r)); }

double Weight::log_value(double r) const {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("weight radius must lie in [0, 1)");
    return impl_->log_v(r);
}

std::optional<double> Weight::standard_exponent() const { return impl_->exponent; }
const std::string& Weight::description() const { return impl_->description; }
std::span<const double> Weight::dyadic_log_samples() const { return impl_->dyadic; }
std::span<const Weight::MonomialSup> Weight::monomial_table() const { return impl_->monomials; }
double Weight::monomial_log_sup(double n) const { return impl_->monomial_log_sup(n); }
double Weight::lacunary_norm() const { return impl_->lacunary_norm; }

double Weight::lacunary_value(double rho) const {
    if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("radius must lie in [0, 1)");
    if (rho == 0.0) return 0.0;
    const double log_rho = std::log(rho);
    double sum = 0.0;
    for (int k = 0; k < Impl::kLacunaryTerms; ++k) {
        const double n = std::ldexp(1.0, k);
        sum += std::exp((n + 1.0) * log_rho - std::log(n + 1.0) - impl_->lacunary_log_coeff[k]);
    }
    return sum;
}

// ---------------------------------------------------------------------------

namespace {

// Value at x = 0 of the least-squares quadratic through (x_i, y_i).
double quadratic_intercept(const std::vector<double>& x, const std::vector<double>& y) {
    // center and scale x for conditioning
    const double x0 = x.back(), scale = x.front() - x.back();
    double m[3][4] = {};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = (x[i] - x0) / scale;
        const double basis[3] = {1.0, t, t * t};
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) m[a][b] += basis[a] * basis[b];
            m[a][3] += basis[a] * y[i];
        }
    }
    for (int c = 0; c < 3; ++c)
        for (int r = c + 1; r < 3; ++r) {
            const double f = m[r][c] / m[c][c];
            for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
        }
    double coef[3];
    for (int r = 2; r >= 0; --r) {
        double acc = m[r][3];
        for (int k = r + 1; k < 3; ++k) acc -= m[r][k] * coef[k];
        coef[r] = acc / m[r][r];
    }
    const double t = -x0 / scale;
    return coef[0] + coef[1] * t + coef[2] * t * t;
}

}  // namespace

NormalityReport is_normal(const Weight& v, double margin, int max_shift) {
    NormalityReport report;
    const auto samples = v.dyadic_log_samples();
    const int n_samples = static_cast<int>(samples.size());
    for (double s : samples) {
        if (!std::isfinite(s)) {
            report.decidable = false;
            report.normal = false;
            report.note = "dyadic samples under/overflow; numerically undecidable";
            return report;
        }
    }
    auto L = [&](int n) { return samples[n - 1]; };

    // Non-increasing on the dyadic samples and on a uniform radial sweep.
    for (int n = 1; n < n_samples; ++n)
        if (L(n + 1) > L(n) + 1e-12 * std::max(1.0, std::abs(L(n)))) report.nonincreasing = false;
    double previous = v.log_value(0.0);
    for (int i = 1; i < 1000; ++i) {
        const double current = v.log_value(i / 1000.0);
        if (current > previous + 1e-12 * std::max(1.0, std::abs(previous))) report.nonincreasing = false;
        previous = current;
    }

    // cond1: inf over shifts k of the tail maximum of v(1-2^{-n-k})/v(1-2^{-n}).
    // The tail maximum misses ratios that creep up to 1 (decay slower than any
    // power), so a quadratic fit of the log-ratios in 1/n is extrapolated to n = inf too.
    double log_cond1 = kInf;
    for (int k = 1; k <= max_shift; ++k) {
        double worst = -kInf;
        std::vector<double> inv_n, log_ratio;
        for (int n = n_samples / 2; n + k <= n_samples; ++n) {
            worst = std::max(worst, L(n + k) - L(n));
            inv_n.push_back(1.0 / n);
            log_ratio.push_back(L(n + k) - L(n));
        }
        if (inv_n.size() >= 4) worst = std::max(worst, quadratic_intercept(inv_n, log_ratio));
        log_cond1 = std::min(log_cond1, worst);
    }
    report.cond1 = std::exp(log_cond1);

    // cond2: sup over n of v(1-2^{-n})/v(1-2^{-n-1}), tested for blow-up.
    std::vector<double> log_ratio;
    for (int n = 1; n < n_samples; ++n) log_ratio.push_back(L(n) - L(n + 1));
    report.log_cond2 = *std::max_element(log_ratio.begin(), log_ratio.end());
    report.cond2 = std::exp(report.log_cond2);
    const double last = log_ratio.back();
    const double mid = log_ratio[log_ratio.size() / 2];
    const double three_quarter = log_ratio[3 * log_ratio.size() / 4];
    report.cond2_bounded = !(last > 1.5 * std::max(mid, 0.0) + 1e-9 && last > three_quarter);

    report.normal = report.cond1 < 1.0 - margin && report.cond2_bounded && report.nonincreasing;
    std::ostringstream note;
    if (!report.nonincreasing) note << "weight increases somewhere on [0,1); ";
    if (!(report.cond1 < 1.0 - margin)) note << "first dyadic condition fails (cond1 = " << report.cond1 << "); ";
    if (!report.cond2_bounded) note << "dyadic ratio v(1-2^-n)/v(1-2^-n-1) diverges (log ratio " << last << " at n = " << n_samples - 1 << "); ";
    report.note = note.str();
    return report;
}

double associated_weight(const Weight& v, Complex z) {
    const double rho = std::abs(z);
    if (!(rho < 1.0)) throw DomainError("associated weight needs |z| < 1");
    const double log_v = v.log_value(rho);
    const auto table = v.monomial_table();
    double best;
    if (rho == 0.0) {
        best = -table.front().log_sup;
    } else {
        const double log_rho = std::log(rho);
        best = -kInf;
        for (const auto& entry : table) best = std::max(best, entry.degree * log_rho - entry.log_sup);
    }
    // Each monomial term is at most 1/v(z); clamp against search shortfall.
    return std::exp(-std::min(best, -log_v));
}

Weight bloch_transfer(const Weight& v) {
    return Weight::from_log_profile("(1-r) * " + v.description(),
                                    [v](double r) { return std::log(1.0 - r) + v.log_value(r); });
}

}  // namespace volterra
