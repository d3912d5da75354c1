#include "volterra/space.hpp"

#include <cmath>
#include <sstream>

namespace volterra {

SpaceSpec SpaceSpec::hinf() { return {SpaceKind::hinf, 0.0, 0.0, std::nullopt}; }

SpaceSpec SpaceSpec::hv(Weight v, bool little) {
    return {little ? SpaceKind::hv_0 : SpaceKind::hv_inf, 0.0, 0.0, std::move(v)};
}

SpaceSpec SpaceSpec::bv(Weight v, bool little) {
    return {little ? SpaceKind::bv_0 : SpaceKind::bv_inf, 0.0, 0.0, std::move(v)};
}

SpaceSpec SpaceSpec::hardy(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("Hardy space needs 1 <= p < inf");
    return {SpaceKind::hardy, p, 0.0, std::nullopt};
}

SpaceSpec SpaceSpec::bergman(double p, double alpha) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("Bergman space needs 1 <= p < inf");
    if (!(alpha > -1.0) || !std::isfinite(alpha)) throw DomainError("Bergman space needs alpha > -1");
    return {SpaceKind::bergman, p, alpha, std::nullopt};
}

const Weight& SpaceSpec::weight() const {
    if (!weight_) throw DomainError("space " + tag() + " carries no weight");
    return *weight_;
}

double SpaceSpec::delta_exponent() const {
    switch (kind_) {
        case SpaceKind::hinf: return 0.0;
        case SpaceKind::hardy: return 1.0 / p_;
        case SpaceKind::bergman: return (2.0 + alpha_) / p_;
        default: throw DomainError("space " + tag() + " has no closed-form evaluation norm");
    }
}

std::string SpaceSpec::tag() const {
    std::ostringstream out;
    switch (kind_) {
        case SpaceKind::hinf: out << "Hinf"; break;
        case SpaceKind::hv_inf: out << "Hv_inf(" << weight_->description() << ")"; break;
        case SpaceKind::hv_0: out << "Hv_0(" << weight_->description() << ")"; break;
        case SpaceKind::bv_inf: out << "Bv_inf(" << weight_->description() << ")"; break;
        case SpaceKind::bv_0: out << "Bv_0(" << weight_->description() << ")"; break;
        case SpaceKind::hardy: out << "Hardy(" << p_ << ")"; break;
        case SpaceKind::bergman: out << "Bergman(" << p_ << "," << alpha_ << ")"; break;
    }
    return out.str();
}

}  // namespace volterra
