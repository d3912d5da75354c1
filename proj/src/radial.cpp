#include "volterra/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>

#include "volterra/parallel.hpp"
#include "volterra/quadrature.hpp"

namespace volterra {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap_angle(double theta) {
    double t = std::remainder(theta, kTwoPi);
    if (t <= -kPi) t += kTwoPi;
    return t;
}

double panel_integral(const AnalyticFunction& gprime, double alpha, Complex unit, double a, double b, double tol) {
    auto integrand = [&](double r) {
        const double w = (1.0 - r) * (1.0 + r);
        const double value = std::abs(gprime.eval_unchecked(r * unit)) * (alpha == 0.0 ? 1.0 : std::pow(w, -alpha));
        if (!std::isfinite(value)) throw IntegrandError("non-finite integrand at r = " + std::to_string(r));
        return value;
    };
    return gl15_adaptive<double>(integrand, a, b, tol);
}

// [a, b] split at half-octave radii.
double clustered_integral(const AnalyticFunction& gprime, double alpha, Complex unit, double a, double b, double tol) {
    double total = 0.0;
    double lo = a;
    while (lo < b) {
        const double octaves = -std::log2(1.0 - lo);
        double next = 1.0 - std::exp2(-(std::floor(2.0 * octaves + 1e-9) + 1.0) / 2.0);
        if (!(next > lo)) next = b;
        const double hi = std::min(b, next);
        total += panel_integral(gprime, alpha, unit, lo, hi, tol);
        lo = hi;
    }
    return total;
}

template <class F>
std::pair<double, double> refine_max(F&& objective, double theta, double value, double h, int rounds) {
    for (int round = 0; round < rounds; ++round) {
        h *= 0.5;
        for (double candidate : {theta - h, theta + h}) {
            const double v = objective(candidate);
            if (v > value) {
                value = v;
                theta = candidate;
            }
        }
    }
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = theta - h, b = theta + h;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = objective(c), fd = objective(d);
    for (int i = 0; i < 60 && b - a > 1e-13; ++i) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d);
        }
    }
    if (fc > value) {
        value = fc;
        theta = c;
    }
    if (fd > value) {
        value = fd;
        theta = d;
    }
    return {theta, value};
}

std::vector<RayProfile> grid_profiles(const AnalyticFunction& gprime, double alpha, double t,
                                      const RadialOptions& options, std::vector<double>& angles) {
    angles.resize(static_cast<std::size_t>(options.n_angles));
    for (std::size_t m = 0; m < angles.size(); ++m) angles[m] = kTwoPi * m / options.n_angles;
    std::vector<RayProfile> rays(angles.size());
    parallel_for(angles.size(), [&](std::size_t m) { rays[m] = ray_profile(gprime, alpha, angles[m], t, options); });
    return rays;
}

// Classification of a family of rays: divergent if any ray diverges,
// convergent if all converge.
Growth combine(Growth acc, Growth g) {
    if (acc == Growth::divergent || g == Growth::divergent) return Growth::divergent;
    if (acc == Growth::undecided || g == Growth::undecided) return Growth::undecided;
    return Growth::convergent;
}

}  // namespace

double radial_integral(const AnalyticFunction& g, double alpha, double theta, double t0, double t1, double abs_tol) {
    if (!(t0 >= 0.0 && t0 < t1 && t1 < 1.0)) throw DomainError("radial integral needs 0 <= t0 < t1 < 1");
    return clustered_integral(g.derivative(), alpha, std::polar(1.0, theta), t0, t1, abs_tol);
}

RayProfile ray_profile(const AnalyticFunction& gprime, double alpha, double theta, double t,
                       const RadialOptions& options) {
    RayProfile ray;
    ray.theta = theta;
    ray.t = t;
    const Complex unit = std::polar(1.0, theta);
    double a = t;
    for (int j = 1; j <= options.depth; ++j) {
        const double c = 1.0 - std::ldexp(1.0, -j);
        if (c <= a) continue;
        const double piece = clustered_integral(gprime, alpha, unit, a, c, options.abs_tol);
        ray.increments.push_back(piece);
        ray.cutoffs.push_back(c);
        ray.value += piece;
        a = c;
    }
    ray.fit = classify_increments(ray.increments);
    ray.limit = ray.value + ray.fit.remainder;
    return ray;
}

SupThetaResult sup_theta_integral(const AnalyticFunction& g, double alpha, double t, const RadialOptions& options) {
    const double r_max = 1.0 - std::ldexp(1.0, -options.depth);
    if (!(t >= 0.0 && t < r_max)) throw DomainError("cutoff must lie in [0, r_max)");
    const AnalyticFunction gprime = g.derivative();
    std::vector<double> angles;
    const auto rays = grid_profiles(gprime, alpha, t, options, angles);

    SupThetaResult result;
    result.r_max_depth = options.depth;
    std::size_t best = 0;
    Growth growth = Growth::convergent;
    double divergent_value = -1, divergent_theta = 0;
    for (std::size_t m = 0; m < rays.size(); ++m) {
        if (rays[m].value > rays[best].value) best = m;
        growth = combine(growth, rays[m].fit.growth);
        result.sup_limit = std::max(result.sup_limit, rays[m].limit);
        if (rays[m].fit.growth == Growth::divergent && rays[m].value > divergent_value) {
            divergent_value = rays[m].value;
            divergent_theta = angles[m];
        }
    }
    auto objective = [&](double theta) { return ray_profile(gprime, alpha, theta, t, options).value; };
    const auto [theta, value] = refine_max(objective, angles[best], rays[best].value, kTwoPi / options.n_angles,
                                           options.bisection_rounds);
    const RayProfile refined = ray_profile(gprime, alpha, theta, t, options);
    growth = combine(growth, refined.fit.growth);
    result.sup = std::max(rays[best].value, value);
    result.sup_limit = std::max(result.sup_limit, refined.limit);
    result.argmax_theta = wrap_angle(value >= rays[best].value ? theta : angles[best]);
    result.growth = growth;
    result.growth_slope = refined.fit.slope;
    if (growth == Growth::divergent) {
        result.sup_limit = kInf;
        if (refined.fit.growth != Growth::divergent) result.argmax_theta = wrap_angle(divergent_theta);
    } else if (growth == Growth::undecided) {
        result.sup_limit = kInf;
    }
    return result;
}

RadialProfile tail_sup_profile(const AnalyticFunction& g, double alpha, const RadialOptions& options) {
    const AnalyticFunction gprime = g.derivative();
    RadialProfile profile;
    profile.alpha = alpha;
    profile.r_max = 1.0 - std::ldexp(1.0, -options.depth);
    const auto depth = static_cast<std::size_t>(options.depth);
    for (std::size_t j = 1; j <= depth; ++j) profile.cutoffs.push_back(1.0 - std::ldexp(1.0, -static_cast<int>(j)));

    auto tails_of = [&](const RayProfile& ray, std::vector<double>& tails, std::vector<double>& limits) {
        tails.assign(depth, 0.0);
        limits.assign(depth, 0.0);
        double acc = 0.0;
        for (std::size_t j = depth; j-- > 0;) {
            tails[j] = acc;
            acc += ray.increments[j];
        }
        const double remainder = ray.fit.growth == Growth::undecided ? 0.0 : ray.fit.remainder;
        for (std::size_t j = 0; j < depth; ++j) limits[j] = tails[j] + remainder;
    };

    const auto rays = grid_profiles(gprime, alpha, 0.0, options, profile.angles);
    profile.sup_tails.assign(depth, 0.0);
    profile.sup_tails_limit.assign(depth, 0.0);
    Growth growth = Growth::convergent;
    std::vector<std::size_t> argmax(depth + 1, 0);
    std::vector<double> tails, limits;
    double divergent_value = -1, divergent_theta = 0;
    for (std::size_t m = 0; m < rays.size(); ++m) {
        tails_of(rays[m], tails, limits);
        profile.values.push_back(rays[m].value);
        profile.classification.push_back(rays[m].fit.growth);
        profile.growth_slopes.push_back(rays[m].fit.slope);
        growth = combine(growth, rays[m].fit.growth);
        if (rays[m].fit.growth == Growth::divergent && rays[m].value > divergent_value) {
            divergent_value = rays[m].value;
            divergent_theta = profile.angles[m];
        }
        if (rays[m].value > rays[argmax[0]].value) argmax[0] = m;
        for (std::size_t j = 0; j < depth; ++j) {
            if (tails[j] > profile.sup_tails[j] || m == 0) {
                profile.sup_tails[j] = std::max(profile.sup_tails[j], tails[j]);
                argmax[j + 1] = m;
            }
            profile.sup_tails_limit[j] = std::max(profile.sup_tails_limit[j], limits[j]);
        }
        profile.tails.push_back(tails);
    }

    // Refine each distinct grid argmax with the objective of the first cutoff that selected it.
    const double h = kTwoPi / options.n_angles;
    std::set<std::size_t> seen;
    for (std::size_t j = 0; j < depth; ++j) {
        const std::size_t m = argmax[j];
        if (!seen.insert(m).second) continue;
        auto objective = [&](double theta) {
            const RayProfile ray = ray_profile(gprime, alpha, theta, 0.0, options);
            if (j == 0) return ray.value;
            double tail = 0;
            for (std::size_t i = j; i < depth; ++i) tail += ray.increments[i];
            return tail;
        };
        const double start = j == 0 ? rays[m].value : profile.tails[m][j - 1];
        const auto [theta, value] = refine_max(objective, profile.angles[m], start, h, options.bisection_rounds);
        const RayProfile refined = ray_profile(gprime, alpha, theta, 0.0, options);
        growth = combine(growth, refined.fit.growth);
        tails_of(refined, tails, limits);
        for (std::size_t i = 0; i < depth; ++i) {
            profile.sup_tails[i] = std::max(profile.sup_tails[i], tails[i]);
            profile.sup_tails_limit[i] = std::max(profile.sup_tails_limit[i], limits[i]);
        }
        if (j == 0) {
            profile.witness_theta = wrap_angle(value >= rays[m].value ? theta : profile.angles[m]);
            profile.witness_growth = refined.fit.growth;
        }
    }
    if (growth == Growth::divergent && profile.witness_growth != Growth::divergent) {
        profile.witness_theta = wrap_angle(divergent_theta);
        profile.witness_growth = Growth::divergent;
    }

    if (growth == Growth::divergent) {
        profile.tail_limit = {LimitKind::unbounded, kInf, kInf, kInf, profile.sup_tails.back(), "divergent ray"};
    } else {
        profile.tail_limit = extrapolate_limit(profile.sup_tails_limit);
        if (growth == Growth::undecided && profile.tail_limit.kind != LimitKind::zero) {
            profile.tail_limit.kind = LimitKind::undecided;
            profile.tail_limit.method = "ray growth undecided";
        }
    }
    return profile;
}

Decision RadialProfile::vanishes(double tol) const { return tail_limit.vanishes(tol); }

std::string RadialProfile::verdict() const {
    switch (vanishes()) {
        case Decision::holds: return "compact-consistent";
        case Decision::fails: return "noncompact-consistent";
        case Decision::undecided: return "undecided";
    }
    return "undecided";
}

void write_csv(const RadialProfile& profile, std::ostream& out) {
    out << "theta,value,growth";
    for (std::size_t j = 1; j <= profile.cutoffs.size(); ++j) out << ",tail_" << j;
    out << '\n';
    out.precision(17);
    for (std::size_t m = 0; m < profile.angles.size(); ++m) {
        out << profile.angles[m] << ',' << profile.values[m] << ',' << to_string(profile.classification[m]);
        for (double t : profile.tails[m]) out << ',' << t;
        out << '\n';
    }
}

MembershipResult brv_membership(const AnalyticFunction& g, const RadialOptions& options) {
    const SupThetaResult sup = sup_theta_integral(g, 0.0, 0.0, options);
    MembershipResult result;
    result.witness_theta = sup.argmax_theta;
    result.value = sup.growth == Growth::convergent ? sup.sup_limit : sup.sup;
    switch (sup.growth) {
        case Growth::convergent:
            result.member = Decision::holds;
            result.verdict = "in-BRV";
            break;
        case Growth::divergent:
            result.member = Decision::fails;
            result.verdict = "not-in-BRV";
            break;
        case Growth::undecided:
            result.verdict = "undecided";
            break;
    }
    return result;
}

MembershipResult brv0_membership(const AnalyticFunction& g, const RadialOptions& options, double tol) {
    const RadialProfile profile = tail_sup_profile(g, 0.0, options);
    MembershipResult result;
    result.witness_theta = profile.witness_theta;
    result.value = profile.tail_limit.estimate;
    result.member = profile.vanishes(tol);
    result.verdict = result.member == Decision::holds ? "in-BRV_0"
                     : result.member == Decision::fails ? "not-in-BRV_0"
                                                        : "undecided";
    return result;
}

}  // namespace volterra
