#include "volterra/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace volterra {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LimitFit make(LimitKind kind, double estimate, double lower, double upper, double last, const char* method) {
    return {kind, estimate, lower, upper, last, method};
}

}  // namespace

const char* to_string(LimitKind kind) {
    switch (kind) {
        case LimitKind::zero: return "zero";
        case LimitKind::positive: return "positive";
        case LimitKind::unbounded: return "unbounded";
        case LimitKind::undecided: return "undecided";
    }
    return "undecided";
}

const char* to_string(Growth growth) {
    switch (growth) {
        case Growth::convergent: return "convergent";
        case Growth::divergent: return "divergent";
        case Growth::undecided: return "undecided";
    }
    return "undecided";
}

Decision LimitFit::vanishes(double tol) const {
    switch (kind) {
        case LimitKind::zero: return Decision::holds;
        case LimitKind::positive: return estimate <= tol ? Decision::holds : Decision::fails;
        case LimitKind::unbounded: return Decision::fails;
        case LimitKind::undecided: return lower > tol ? Decision::fails : Decision::undecided;
    }
    return Decision::undecided;
}

double fit_slope(std::span<const double> x, std::span<const double> y, double* r_squared) {
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    const double slope = sxx > 0 ? sxy / sxx : 0.0;
    if (r_squared) *r_squared = (sxx > 0 && syy > 0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    return slope;
}

LimitFit extrapolate_limit(std::span<const double> seq) {
    if (seq.empty()) return make(LimitKind::zero, 0, 0, 0, 0, "empty limsup region");
    for (double s : seq)
        if (!(s < kInf)) return make(LimitKind::unbounded, kInf, kInf, kInf, kInf, "non-finite supremum");
    const std::size_t n = seq.size();
    const double first = seq.front(), last = seq.back();
    if (std::all_of(seq.begin(), seq.end(), [](double s) { return s == 0.0; }))
        return make(LimitKind::zero, 0, 0, 0, 0, "identically zero");
    if (last == 0.0) return make(LimitKind::zero, 0, 0, 0, 0, "vanishes beyond a finite threshold");

    const bool decreasing = n >= 2 && seq[n - 1] < seq[n - 2];
    if (decreasing && last < 1e-4 * first) return make(LimitKind::zero, 0, 0, last, last, "relative decay below 1e-4");

    if (n >= 6) {
        std::vector<double> x, y;
        for (std::size_t j = n / 2; j < n; ++j) {
            if (seq[j] <= 0.0) continue;
            x.push_back(static_cast<double>(j));
            y.push_back(std::log(seq[j]));
        }
        if (x.size() >= 3) {
            double r2 = 0;
            const double q = std::exp(fit_slope(x, y, &r2));
            if (decreasing && q <= 0.9 && r2 >= 0.9)
                return make(LimitKind::zero, 0, 0, last, last, "geometric decay of the tail");
        }
    }

    if (n >= 5) {
        const auto tail = seq.subspan(n - 5);
        const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
        if (*hi > 0.0 && (*hi - *lo) <= 0.02 * *hi) {
            double estimate = last;
            const double d1 = seq[n - 2] - seq[n - 1], d0 = seq[n - 3] - seq[n - 2];
            if (d1 > 0.0 && d0 > 0.0) {
                const double q = d1 / d0;
                if (q < 1.0) estimate = last - d1 * q / (1.0 - q);
            }
            estimate = std::clamp(estimate, 0.0, last);
            return make(LimitKind::positive, estimate, estimate, last, last, "stabilized; geometric extrapolation of differences");
        }
    }
    return make(LimitKind::undecided, last, 0, last, last, "no stable trend");
}

bool grows_without_bound(std::span<const double> maxima, std::span<const double> scales, double* slope_out) {
    const std::size_t n = maxima.size();
    if (slope_out) *slope_out = 0;
    if (n < 8) return false;
    for (double m : maxima)
        if (!(m < kInf)) {
            if (slope_out) *slope_out = kInf;
            return true;
        }
    const std::size_t start = n - n / 4;
    std::vector<double> x, y;
    for (std::size_t k = start; k < n; ++k) {
        if (!(maxima[k] > 0.0)) return false;
        x.push_back(scales[k]);
        y.push_back(std::log(maxima[k]));
    }
    const double slope = fit_slope(x, y);
    if (slope_out) *slope_out = slope;
    if (!(slope > 1e-3 && maxima[n - 1] > maxima[start] && maxima[n - 1] > maxima[n / 2])) return false;
    // saturating maxima (M -> M_inf - c e^{-x}) have slopes decaying like e^{-x};
    // genuine growth keeps the slope of the second half comparable to the first
    const std::size_t half = x.size() / 2;
    if (half < 2) return true;
    const double early = fit_slope(std::span<const double>(x).first(half), std::span<const double>(y).first(half));
    const double late = fit_slope(std::span<const double>(x).subspan(half), std::span<const double>(y).subspan(half));
    return late > 1e-3 && late >= 0.5 * early;
}

GrowthFit classify_increments(std::span<const double> d) {
    GrowthFit fit;
    const std::size_t n = d.size();
    if (n == 0 || std::all_of(d.begin(), d.end(), [](double v) { return v == 0.0; })) {
        fit.growth = Growth::convergent;
        fit.slope = -kInf;
        return fit;
    }
    std::vector<double> x, y;
    for (std::size_t j = n / 2; j < n; ++j) {
        if (d[j] <= 0.0) continue;
        x.push_back(static_cast<double>(j));
        y.push_back(std::log2(d[j]));
    }
    if (x.size() < 3) {
        fit.growth = Growth::convergent;
        fit.slope = -kInf;
        return fit;
    }
    fit.slope = fit_slope(x, y);
    // subgeometric decay such as 1/j: the slope flattens across the window
    bool flattening = false;
    if (x.size() >= 8 && fit.slope < 0.0) {
        const std::size_t half = x.size() / 2;
        const double early = fit_slope(std::span<const double>(x).first(half), std::span<const double>(y).first(half));
        const double late = fit_slope(std::span<const double>(x).subspan(half), std::span<const double>(y).subspan(half));
        flattening = early < 0.0 && late > 0.8 * early;
    }
    if (fit.slope <= -0.05 && !flattening) {
        fit.growth = Growth::convergent;
        double q = std::exp2(fit.slope);
        if (n >= 2 && d[n - 2] > 0.0) {
            const double ratio = d[n - 1] / d[n - 2];
            if (ratio > 0.0 && ratio < 1.0) q = ratio;
        }
        fit.remainder = d[n - 1] * q / (1.0 - q);
    } else if (fit.slope > -0.01) {
        fit.growth = Growth::divergent;
        fit.remainder = kInf;
    } else {
        fit.growth = Growth::undecided;
        fit.remainder = kInf;
    }
    return fit;
}

}  // namespace volterra
