#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "volterra/common.hpp"

namespace volterra {

/// Polar sampling of the disc clustered toward the boundary:
/// r_k = 1 - 2^{-k/rings_per_octave}, k = 0..depth*rings_per_octave.
struct GridSpec {
    int depth = 30;
    int rings_per_octave = 4;
    int n_angles = 512;

    std::size_t ring_count() const {
        return static_cast<std::size_t>(depth) * static_cast<std::size_t>(rings_per_octave) + 1;
    }
    double r_max() const { return 1.0 - std::ldexp(1.0, -depth); }
};

class DiscGrid {
public:
    explicit DiscGrid(const GridSpec& spec = {}) : spec_(spec) {
        if (spec.depth < 1 || spec.depth > 50 || spec.rings_per_octave < 1 || spec.n_angles < 1)
            throw DomainError("grid parameters out of range");
        const std::size_t rings = spec.ring_count();
        radii_.resize(rings);
        for (std::size_t k = 0; k < rings; ++k)
            radii_[k] = 1.0 - std::exp2(-static_cast<double>(k) / spec.rings_per_octave);
        angles_.resize(static_cast<std::size_t>(spec.n_angles));
        units_.resize(angles_.size());
        for (std::size_t m = 0; m < angles_.size(); ++m) {
            angles_[m] = kTwoPi * static_cast<double>(m) / static_cast<double>(spec.n_angles);
            units_[m] = std::polar(1.0, angles_[m]);
        }
    }

    const GridSpec& spec() const noexcept { return spec_; }
    std::span<const double> radii() const noexcept { return radii_; }
    std::span<const double> angles() const noexcept { return angles_; }
    std::size_t ring_count() const noexcept { return radii_.size(); }
    std::size_t angle_count() const noexcept { return angles_.size(); }
    std::size_t size() const noexcept { return radii_.size() * angles_.size(); }
    double r_max() const noexcept { return radii_.back(); }

    Complex point(std::size_t ring, std::size_t angle) const { return radii_[ring] * units_[angle]; }
    Complex unit(std::size_t angle) const { return units_[angle]; }

private:
    GridSpec spec_;
    std::vector<double> radii_;
    std::vector<double> angles_;
    std::vector<Complex> units_;
};

}  // namespace volterra
