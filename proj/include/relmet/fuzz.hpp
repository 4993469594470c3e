#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>

#include "relmet/means.hpp"
#include "relmet/vec.hpp"

namespace relmet {

struct Triple {
    Vec a, b, c;
};

/// Result of a randomized triangle-inequality campaign.  worst_violation is
/// the largest observed d(x,y) - d(x,z) - d(z,y) over all role rotations of
/// all sampled triples (same units as the metric); worst_relative rescales
/// by the triple's largest pairwise distance, which is what certification
/// thresholds are quoted against.  A witness is recorded exactly when some
/// violation is positive.
struct FuzzReport {
    std::size_t samples = 0;
    double worst_violation = -inf;
    double worst_relative = -inf;
    std::optional<Triple> witness;
    std::uint64_t seed = 0;
};

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

inline Vec sphere_dir(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vec v(n);
    double s;
    do {
        for (auto& c : v) c = g(rng);
        s = norm(v);
    } while (s < 1e-12);
    return scaled(v, 1.0 / s);
}

namespace detail {

/// d1 - d2 - d3 with extended-real care: an infinite d1 is only a violation
/// when both d2 and d3 are finite (a metric into [0,inf] allows inf <= inf).
inline double tri_defect(double d1, double d2, double d3) {
    if (std::isinf(d1)) return (std::isinf(d2) || std::isinf(d3)) ? -inf : inf;
    return d1 - d2 - d3;
}

}  // namespace detail

/// Generic triangle-inequality fuzz: `dist` is any symmetric distance map on
/// the sampler's point type, `sample` draws one triple per call.
template <class Dist, class Sampler>
FuzzReport triangle_fuzz(Dist&& dist, Sampler&& sample, std::size_t n_samples,
                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    FuzzReport rep;
    rep.seed = seed;
    rep.samples = n_samples;
    for (std::size_t i = 0; i < n_samples; ++i) {
        Triple t = sample(rng);
        double dab = dist(t.a, t.b);
        double dac = dist(t.a, t.c);
        double dcb = dist(t.c, t.b);
        double scale = std::max({dab, dac, dcb});
        std::array<double, 3> defects = {detail::tri_defect(dab, dac, dcb),
                                         detail::tri_defect(dac, dab, dcb),
                                         detail::tri_defect(dcb, dab, dac)};
        for (double v : defects) {
            if (v > rep.worst_violation) {
                rep.worst_violation = v;
                if (v > 0.0) rep.witness = t;
            }
            if (scale > 0.0 && std::isfinite(scale)) {
                double r = v / scale;
                if (r > rep.worst_relative) rep.worst_relative = r;
            }
        }
    }
    if (!(rep.worst_violation > 0.0)) rep.witness.reset();
    return rep;
}

}  // namespace relmet
