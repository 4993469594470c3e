#pragma once

// Shared helpers for the unit and acceptance suites: deterministic samplers
// and a generator of admissible product-weight profiles.

#include <cmath>
#include <cstdint>
#include <random>

#include "relmet/fuzz.hpp"
#include "relmet/vec.hpp"

namespace relmet::testsupport {

inline Vec log_point(std::mt19937_64& rng, std::size_t dim, double lo, double hi) {
    return scaled(sphere_dir(rng, dim), log_uniform(rng, lo, hi));
}

/// Increasing convex profile with f(t)/t nonincreasing out to t_max:
/// f(t) = a + b t + c max(0, t-k)^2 with c capped at a/(t_max^2 - k^2), the
/// largest quadratic coefficient compatible with a - c(t-k)(t+k) >= 0 on
/// [0, t_max].  Beyond t_max a tangent-line extension keeps every property
/// globally, so conclusions drawn from samples within t_max stand.
struct ConvexModerateProfile {
    double a = 1.0, b = 0.0, c = 0.0, k = 0.0;

    double operator()(double t) const {
        double e = t > k ? t - k : 0.0;
        return a + b * t + c * e * e;
    }
};

inline ConvexModerateProfile random_profile(std::mt19937_64& rng, double t_max) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ConvexModerateProfile f;
    f.a = 1.0 + 9.0 * u(rng);
    f.b = 5.0 * u(rng);
    f.k = 5.0 * u(rng);
    if (u(rng) < 0.7 && t_max > f.k) {
        double cap = f.a / (t_max * t_max - f.k * f.k);
        f.c = cap * u(rng);
    }
    return f;
}

}  // namespace relmet::testsupport
