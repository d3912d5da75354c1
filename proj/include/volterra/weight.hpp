#pragma once

// Radial weights v on the disc, their normality test, associated weights and
// the Bloch transfer w(r) = (1 - r) v(r).

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "volterra/common.hpp"

namespace volterra {

class Weight {
public:
    static constexpr int kDyadicSamples = 40;

    /// v_alpha(z) = (1 - |z|^2)^alpha, alpha > 0.
    static Weight standard(double alpha);
    /// Samples (r_i, v_i), r_i strictly increasing in [0, 1). log v is
    /// interpolated linearly in r; beyond the last node the tail continues as a
    /// power of (1 - r) fitted to the last two nodes.
    static Weight from_table(std::vector<std::pair<double, double>> samples);
    /// Weight given through log v(r); preferred for rapidly vanishing weights.
    static Weight from_log_profile(std::string description, std::function<double(double)> log_v);
    static Weight from_profile(std::string description, std::function<double(double)> v);

    double operator()(double r) const;
    double at(Complex z) const { return (*this)(std::abs(z)); }
    double log_value(double r) const;

    std::optional<double> standard_exponent() const;
    const std::string& description() const;

    /// log v(1 - 2^{-n}) for n = 1..kDyadicSamples (index n - 1).
    std::span<const double> dyadic_log_samples() const;

    struct MonomialSup {
        double degree;   // n
        double log_sup;  // log sup_{0<=r<1} v(r) r^n
    };
    /// log M_v(n) on n = 0..64 followed by a 4% geometric progression up to 2^52.
    std::span<const MonomialSup> monomial_table() const;
    /// log M_v(n) for an arbitrary degree (closed form for standard weights,
    /// scan plus golden-section search otherwise).
    double monomial_log_sup(double n) const;

    /// Primitive of the lacunary series sum_k z^{2^k}/M_v(2^k): its value at
    /// rho in [0,1) and a certified upper bound for its B_v norm.
    double lacunary_value(double rho) const;
    double lacunary_norm() const;

private:
    struct Impl;
    explicit Weight(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    static Weight build(std::string description, std::function<double(double)> log_v,
                        std::optional<double> exponent);
    std::shared_ptr<const Impl> impl_;
};

struct NormalityReport {
    double cond1 = 0;           // inf_k max_{tail n} v(1-2^{-n-k})/v(1-2^{-n})
    double cond2 = 0;           // sup_n v(1-2^{-n})/v(1-2^{-n-1}); +inf on overflow
    double log_cond2 = 0;
    bool cond2_bounded = true;  // ratio sequence does not blow up
    bool nonincreasing = true;
    bool decidable = true;      // false when samples under/overflow
    bool normal = false;
    std::string note;
};

NormalityReport is_normal(const Weight& v, double margin = 0.02, int max_shift = 8);

/// Monomial approximation of the associated weight 1/||δ_z||_{H_v^∞};
/// always >= v(z).
double associated_weight(const Weight& v, Complex z);

/// w(r) = (1 - r) v(r).
Weight bloch_transfer(const Weight& v);

}  // namespace volterra
