#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <variant>
#include <vector>

#include "relmet/fuzz.hpp"
#include "relmet/numeric.hpp"
#include "relmet/relative.hpp"
#include "relmet/vec.hpp"

namespace relmet {

/// Point of the one-point compactification of R^n.
struct ExtendedPoint {
    Vec coords;
    bool infinite = false;

    static ExtendedPoint at(Vec v) {
        ExtendedPoint p;
        p.coords = std::move(v);
        return p;
    }
    static ExtendedPoint infinity() {
        ExtendedPoint p;
        p.infinite = true;
        return p;
    }
};

/// Chordal (spherical) distance on the extended space.
inline double chordal(const ExtendedPoint& x, const ExtendedPoint& y) {
    if (x.infinite && y.infinite) return 0.0;
    if (x.infinite) return 1.0 / std::sqrt(1.0 + dot(y.coords, y.coords));
    if (y.infinite) return 1.0 / std::sqrt(1.0 + dot(x.coords, x.coords));
    return dist(x.coords, y.coords) /
           (std::sqrt(1.0 + dot(x.coords, x.coords)) * std::sqrt(1.0 + dot(y.coords, y.coords)));
}

/// Cross-ratio |a,b,c,d| = q(a,c) q(b,d) / (q(a,b) q(c,d)); degenerate cases
/// follow the ratio conventions 0/0 = 0 and positive/0 = infinity.
inline double cross_ratio(const ExtendedPoint& a, const ExtendedPoint& b, const ExtendedPoint& c,
                          const ExtendedPoint& d) {
    return detail::safe_ratio(chordal(a, c) * chordal(b, d), chordal(a, b) * chordal(c, d));
}

/// Hyperbolic metric of the unit ball, 2 arsh(|x-y| / sqrt((1-|x|^2)(1-|y|^2))).
inline double hyperbolic_ball(const Vec& x, const Vec& y) {
    double x2 = dot(x, x), y2 = dot(y, y);
    if (!(x2 < 1.0 && y2 < 1.0)) throw std::domain_error("hyperbolic_ball: point outside the unit ball");
    return 2.0 * std::asinh(dist(x, y) / std::sqrt((1.0 - x2) * (1.0 - y2)));
}

/// Hyperbolic metric of the upper half-space {last coordinate > 0}:
/// cosh(rho) = 1 + |x-y|^2 / (2 x_n y_n).
inline double hyperbolic_half_space(const Vec& x, const Vec& y) {
    double xn = x.back(), yn = y.back();
    if (!(xn > 0.0 && yn > 0.0))
        throw std::domain_error("hyperbolic_half_space: point outside the half-space");
    double d = dist(x, y);
    return arch1p(d * d / (2.0 * xn * yn));
}

/// Composition of sphere inversions, orthogonal maps, translations and
/// dilations, acting on the extended space.
class MobiusMap {
  public:
    struct Inversion {
        Vec center;
        double radius;
    };
    struct Orthogonal {
        std::vector<Vec> rows;  // orthonormal rows
    };
    struct Translation {
        Vec offset;
    };
    struct Dilation {
        double factor;
    };
    using Primitive = std::variant<Inversion, Orthogonal, Translation, Dilation>;

    MobiusMap() = default;
    explicit MobiusMap(std::vector<Primitive> steps) : steps_(std::move(steps)) {}

    static MobiusMap inversion(Vec center, double radius) {
        if (!(radius > 0.0)) throw std::invalid_argument("MobiusMap: inversion radius must be positive");
        return MobiusMap({Primitive{Inversion{std::move(center), radius}}});
    }
    static MobiusMap orthogonal(std::vector<Vec> rows) {
        return MobiusMap({Primitive{Orthogonal{std::move(rows)}}});
    }
    static MobiusMap translation(Vec offset) {
        return MobiusMap({Primitive{Translation{std::move(offset)}}});
    }
    static MobiusMap dilation(double factor) {
        if (!(factor > 0.0)) throw std::invalid_argument("MobiusMap: dilation factor must be positive");
        return MobiusMap({Primitive{Dilation{factor}}});
    }

    /// Self-map of the unit ball exchanging 0 and a: the inversion in the
    /// sphere centered at a/|a|^2 with radius sqrt(1-|a|^2)/|a| (an
    /// involution, orthogonal to the unit sphere).
    static MobiusMap ball_swap(const Vec& a) {
        double a2 = dot(a, a);
        if (!(a2 < 1.0)) throw std::invalid_argument("MobiusMap: swap point outside the unit ball");
        if (a2 == 0.0) return MobiusMap();  // identity
        return inversion(scaled(a, 1.0 / a2), std::sqrt(1.0 - a2) / std::sqrt(a2));
    }

    MobiusMap then(const MobiusMap& next) const {
        std::vector<Primitive> all = steps_;
        all.insert(all.end(), next.steps_.begin(), next.steps_.end());
        return MobiusMap(std::move(all));
    }

    const std::vector<Primitive>& steps() const { return steps_; }

    ExtendedPoint operator()(const ExtendedPoint& p) const {
        ExtendedPoint cur = p;
        for (const Primitive& step : steps_) cur = apply(step, cur);
        return cur;
    }

    Vec operator()(const Vec& x) const {
        ExtendedPoint r = (*this)(ExtendedPoint::at(x));
        if (r.infinite) throw std::domain_error("MobiusMap: point mapped to infinity");
        return r.coords;
    }

  private:
    static ExtendedPoint apply(const Primitive& step, const ExtendedPoint& p) {
        if (const auto* inv = std::get_if<Inversion>(&step)) {
            if (p.infinite) return ExtendedPoint::at(inv->center);
            Vec d = sub(p.coords, inv->center);
            double d2 = dot(d, d);
            if (d2 == 0.0) return ExtendedPoint::infinity();
            return ExtendedPoint::at(add(inv->center, scaled(d, inv->radius * inv->radius / d2)));
        }
        if (const auto* rot = std::get_if<Orthogonal>(&step)) {
            if (p.infinite) return p;
            Vec out(rot->rows.size(), 0.0);
            for (std::size_t i = 0; i < rot->rows.size(); ++i) out[i] = dot(rot->rows[i], p.coords);
            return ExtendedPoint::at(std::move(out));
        }
        if (const auto* tr = std::get_if<Translation>(&step)) {
            if (p.infinite) return p;
            return ExtendedPoint::at(add(p.coords, tr->offset));
        }
        const auto& dil = std::get<Dilation>(step);
        if (p.infinite) return p;
        return ExtendedPoint::at(scaled(p.coords, dil.factor));
    }

    std::vector<Primitive> steps_;
};

/// Haar-ish random rotation: Gram-Schmidt on a Gaussian matrix.
template <class URBG>
MobiusMap random_orthogonal(URBG& rng, std::size_t n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Vec> rows;
    while (rows.size() < n) {
        Vec r(n);
        for (double& c : r) c = gauss(rng);
        for (const Vec& prev : rows) {
            double proj = dot(r, prev);
            for (std::size_t i = 0; i < n; ++i) r[i] -= proj * prev[i];
        }
        double len = norm(r);
        if (len < 1e-8) continue;  // resample a degenerate draw
        rows.push_back(scaled(r, 1.0 / len));
    }
    return MobiusMap::orthogonal(std::move(rows));
}

/// Random Mobius self-map of the unit ball: rotation followed by a 0 <-> a swap.
template <class URBG>
MobiusMap random_ball_automorphism(URBG& rng, std::size_t n, double max_swap_norm = 0.8) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Vec a = sphere_dir(rng, n);
    double r = max_swap_norm * std::pow(unif(rng), 1.0 / static_cast<double>(n));
    return random_orthogonal(rng, n).then(MobiusMap::ball_swap(scaled(a, r)));
}

/// Largest relative drift of the cross-ratio over sampled quadruples under a
/// given map; the defining invariant of Mobius maps.
template <class URBG>
double cross_ratio_drift(const MobiusMap& g, URBG& rng, std::size_t n_quadruples,
                         std::size_t dim) {
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < n_quadruples; ++k) {
        ExtendedPoint pts[4];
        for (auto& p : pts) {
            Vec v(dim);
            for (double& c : v) c = unif(rng);
            p = ExtendedPoint::at(std::move(v));
        }
        double before = cross_ratio(pts[0], pts[1], pts[2], pts[3]);
        double after = cross_ratio(g(pts[0]), g(pts[1]), g(pts[2]), g(pts[3]));
        if (!std::isfinite(before) || before == 0.0) continue;
        worst = std::max(worst, std::abs(after - before) / before);
    }
    return worst;
}

struct InvarianceWitness {
    Vec x, y;
    double before = 0.0;
    double after = 0.0;
};

struct InvarianceReport {
    bool invariant = false;
    double max_residual = 0.0;
    std::optional<InvarianceWitness> witness;
};

/// Tests whether the relative distance of the product weight f(|x|) f(|y|) on
/// the unit ball is invariant under its Mobius self-maps.  Deterministic
/// equal-radius constructions (where invariance forces f(r) = sqrt(1-r^2))
/// are checked first, then seeded random pairs and maps.  Only the profile
/// sqrt(1-t^2) passes.
template <class F>
InvarianceReport mobius_invariance_test(F&& f, std::size_t n_samples, std::uint64_t seed,
                                        std::size_t dim = 3) {
    if (std::abs(f(0.0) - 1.0) > 1e-12)
        throw std::invalid_argument("mobius_invariance_test: profile must satisfy f(0) = 1");
    auto rho_f = [&](const Vec& x, const Vec& y) {
        return detail::safe_ratio(dist(x, y), f(norm(x)) * f(norm(y)));
    };
    InvarianceReport rep;
    auto record = [&](const Vec& x, const Vec& y, double before, double after) {
        double scale = std::max({before, after, 1e-30});
        double res = std::abs(after - before) / scale;
        if (res > rep.max_residual) {
            rep.max_residual = res;
            rep.witness = InvarianceWitness{x, y, before, after};
        }
    };

    // Equal-radius pairs with |x-y| = r sqrt(1-r^2), pushed by the swap that
    // takes y to the origin.
    for (double r : {0.3, 0.5, 0.7, 0.9}) {
        double d = r * std::sqrt(1.0 - r * r);
        double psi = 2.0 * std::asin(0.5 * d / r);
        Vec x(dim, 0.0), y(dim, 0.0);
        x[0] = r;
        y[0] = r * std::cos(psi);
        y[1] = r * std::sin(psi);
        MobiusMap g = MobiusMap::ball_swap(y);
        record(x, y, rho_f(x, y), rho_f(g(x), g(y)));
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t k = 0; k < n_samples; ++k) {
        Vec x = scaled(sphere_dir(rng, dim),
                       0.95 * std::pow(unif(rng), 1.0 / static_cast<double>(dim)));
        Vec y = scaled(sphere_dir(rng, dim),
                       0.95 * std::pow(unif(rng), 1.0 / static_cast<double>(dim)));
        MobiusMap g = random_ball_automorphism(rng, dim);
        record(x, y, rho_f(x, y), rho_f(g(x), g(y)));
    }
    rep.invariant = rep.max_residual <= 1e-9;
    if (rep.invariant) rep.witness.reset();
    return rep;
}

}  // namespace relmet
