#pragma once

#include <optional>
#include <string>

#include "volterra/weight.hpp"

namespace volterra {

enum class SpaceKind { hinf, hv_inf, hv_0, bv_inf, bv_0, hardy, bergman };

/// Tagged description of a Banach space of analytic functions on the disc.
class SpaceSpec {
public:
    static SpaceSpec hinf();
    static SpaceSpec hv(Weight v, bool little = false);
    static SpaceSpec bv(Weight v, bool little = false);
    static SpaceSpec hardy(double p);
    /// A^p_alpha with the normalized measure (alpha + 1)(1 - |z|^2)^alpha dA / pi.
    static SpaceSpec bergman(double p, double alpha);

    SpaceKind kind() const noexcept { return kind_; }
    double p() const noexcept { return p_; }
    double alpha() const noexcept { return alpha_; }
    bool has_weight() const noexcept { return weight_.has_value(); }
    const Weight& weight() const;

    bool is_little() const noexcept { return kind_ == SpaceKind::hv_0 || kind_ == SpaceKind::bv_0; }
    bool is_growth_type() const noexcept { return kind_ == SpaceKind::hv_inf || kind_ == SpaceKind::hv_0; }
    bool is_bloch_type() const noexcept { return kind_ == SpaceKind::bv_inf || kind_ == SpaceKind::bv_0; }
    /// Point evaluations have an exact closed-form norm (H^inf, H^p, A^p_alpha).
    bool closed_form_delta() const noexcept {
        return kind_ == SpaceKind::hinf || kind_ == SpaceKind::hardy || kind_ == SpaceKind::bergman;
    }
    /// Exponent a with ||delta_z|| = (1 - |z|^2)^{-a} for closed-form spaces.
    double delta_exponent() const;

    std::string tag() const;

private:
    SpaceSpec(SpaceKind kind, double p, double alpha, std::optional<Weight> weight)
        : kind_(kind), p_(p), alpha_(alpha), weight_(std::move(weight)) {}

    SpaceKind kind_;
    double p_ = 0;
    double alpha_ = 0;
    std::optional<Weight> weight_;
};

}  // namespace volterra
