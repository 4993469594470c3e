#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "relmet/means.hpp"
#include "relmet/relative.hpp"
#include "relmet/vec.hpp"
#include "relmet/weight.hpp"

namespace relmet {

/// Polar trace of a metric sphere around z.  Directions live in a 2-plane
/// through z: e(theta) = cos(theta) u + sin(theta) v with u pointing from z
/// toward the origin (any axis when z = 0), so theta = 0 faces the origin.
/// Rotational symmetry about the z-axis extends all verdicts to R^n.
struct BallTrace {
    Vec center;
    double radius = 0.0;
    PlaneFrame frame;
    std::vector<double> thetas;    // ascending over [-pi, pi)
    std::vector<double> s_values;  // Euclidean distance to the sphere; +inf if unbounded

    bool all_finite() const {
        for (double s : s_values)
            if (!std::isfinite(s)) return false;
        return true;
    }

    Vec direction(double theta) const {
        Vec e = scaled(frame.u, std::cos(theta));
        Vec sv = scaled(frame.v, std::sin(theta));
        return add(e, sv);
    }

    Vec point(std::size_t i) const {
        return add(center, scaled(direction(thetas[i]), s_values[i]));
    }
};

/// Frame whose u points from z toward the origin; for z = 0 the first axis.
inline PlaneFrame trace_frame(const Vec& z) {
    if (z.size() < 2) throw std::domain_error("trace_frame: need dimension >= 2");
    double nz = norm(z);
    if (nz == 0.0) {
        Vec u(z.size(), 0.0), v(z.size(), 0.0);
        u[0] = 1.0;
        v[1] = 1.0;
        return {u, v};
    }
    return plane_frame(scaled(z, -1.0 / nz), z);  // v arbitrary orthogonal
}

/// Solve dist(z, z + s dir) = r along one ray by geometric bracket growth from
/// the scale guess s0 and bisection.  Returns +inf when the distance never
/// reaches r (ball unbounded in this direction).
template <class Dist>
double solve_ray(Dist&& d, const Vec& z, const Vec& dir, double r, double s0) {
    auto g = [&](double s) { return d(z, add(z, scaled(dir, s))); };
    double hi = (std::isfinite(s0) && s0 > 0.0) ? s0 : r;
    double lo = 0.0;
    // Distances that approach r asymptotically saturate in floating point
    // (d(s) rounds to its limit) and would hand bisection a fake root, so a
    // bracket far beyond the problem scale is treated as unbounded.
    const double cap = 1e12 * std::max({1.0, std::abs(s0), norm(z)});
    while (g(hi) < r) {
        lo = hi;
        hi *= 2.0;
        if (hi > cap) return std::numeric_limits<double>::infinity();
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (g(mid) < r) lo = mid; else hi = mid;
    }
    double s = 0.5 * (lo + hi);
    if (!(s > 1e-200 * std::max(1.0, std::abs(s0))))
        throw std::domain_error("solve_ray: sphere degenerates at the center");
    return s;
}

/// Trace with an arbitrary distance callable; bracket_guess feeds solve_ray.
template <class Dist>
BallTrace trace_sphere_dist(Dist&& d, const Vec& z, double r, std::size_t n_angles,
                            double bracket_guess) {
    if (!(r > 0.0)) throw std::invalid_argument("trace_sphere: radius must be positive");
    if (n_angles < 4) throw std::invalid_argument("trace_sphere: need >= 4 angles");
    BallTrace t;
    t.center = z;
    t.radius = r;
    t.frame = trace_frame(z);
    t.thetas.resize(n_angles);
    t.s_values.resize(n_angles);
    const double pi = 3.14159265358979323846;
    for (std::size_t i = 0; i < n_angles; ++i) {
        double th = -pi + 2.0 * pi * static_cast<double>(i) / static_cast<double>(n_angles);
        t.thetas[i] = th;
        t.s_values[i] = solve_ray(d, z, t.direction(th), r, bracket_guess);
    }
    return t;
}

inline BallTrace trace_sphere(const WeightFunction& m, const Vec& z, double r,
                              std::size_t n_angles) {
    double nz = norm(z);
    double guess = r * m(nz, nz);
    auto d = [&](const Vec& a, const Vec& b) { return rho(m, a, b); };
    return trace_sphere_dist(d, z, r, n_angles, guess);
}

struct IsotropyReport {
    bool isotropic = false;
    std::vector<double> radii;
    std::vector<double> ratios;  // sup/inf of the distance over directions, per radius
};

namespace detail {

inline double directional_ratio(double lo, double hi) {
    if (lo == hi) return 1.0;  // covers the all-infinite and all-equal cases
    if (std::isinf(hi)) return std::isinf(lo) ? 1.0 : std::numeric_limits<double>::infinity();
    if (lo == 0.0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

}  // namespace detail

/// Directional spread of the distance at shrinking Euclidean radii.  The
/// verdict is isotropy: the sup/inf ratio tends to 1 (final radius within
/// 1 + 1e-4).  Equal values in every direction, finite or not, give ratio 1.
inline IsotropyReport isotropy_check(const WeightFunction& m, const Vec& z,
                                     const std::vector<double>& radii,
                                     std::size_t n_dirs = 64) {
    if (radii.size() < 2) throw std::invalid_argument("isotropy_check: need >= 2 radii");
    for (std::size_t i = 0; i + 1 < radii.size(); ++i)
        if (!(radii[i] > radii[i + 1]))
            throw std::invalid_argument("isotropy_check: radii must decrease");
    PlaneFrame fr = trace_frame(z);
    const double pi = 3.14159265358979323846;
    IsotropyReport rep;
    rep.radii = radii;
    for (double rad : radii) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        bool first = true;
        for (std::size_t i = 0; i < n_dirs; ++i) {
            double th = -pi + 2.0 * pi * static_cast<double>(i) / static_cast<double>(n_dirs);
            Vec e = add(scaled(fr.u, std::cos(th)), scaled(fr.v, std::sin(th)));
            double v = rho(m, z, add(z, scaled(e, rad)));
            if (first) {
                lo = hi = v;
                first = false;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        rep.ratios.push_back(detail::directional_ratio(lo, hi));
    }
    rep.isotropic = rep.ratios.back() <= 1.0 + 1e-4;
    return rep;
}

struct StarShapeReport {
    bool star_shaped = false;
    bool trivial = false;                // z = 0: nothing to check
    std::optional<GridWitness> witness;  // fixed = theta, x0/x1 = offending s pair
};

/// s -> rho(z, z + s e(theta)) must be nondecreasing on (0, s_max] in every
/// sampled direction; guaranteed for moderately increasing weights while
/// s_max <= sqrt(norm(z)).
template <class M>
StarShapeReport star_shaped_check(M&& m, const Vec& z, double s_max,
                                  std::size_t n_angles = 64, std::size_t n_steps = 256) {
    StarShapeReport rep;
    if (norm(z) == 0.0) {
        rep.star_shaped = rep.trivial = true;
        return rep;
    }
    if (!(s_max > 0.0)) throw std::invalid_argument("star_shaped_check: s_max must be positive");
    PlaneFrame fr = trace_frame(z);
    const double pi = 3.14159265358979323846;
    double nz = norm(z);
    for (std::size_t i = 0; i < n_angles; ++i) {
        double th = -pi + 2.0 * pi * static_cast<double>(i) / static_cast<double>(n_angles);
        Vec e = add(scaled(fr.u, std::cos(th)), scaled(fr.v, std::sin(th)));
        double prev = 0.0, prev_s = 0.0;
        for (std::size_t j = 1; j <= n_steps; ++j) {
            double s = s_max * static_cast<double>(j) / static_cast<double>(n_steps);
            Vec w = add(z, scaled(e, s));
            double v = detail::safe_ratio(s, m(nz, norm(w)));
            if (v < prev * (1.0 - 1e-12)) {
                rep.star_shaped = false;
                rep.witness = GridWitness{prev_s, s, prev, v, th};
                return rep;
            }
            prev = v;
            prev_s = s;
        }
    }
    rep.star_shaped = true;
    return rep;
}

struct ConvexityReport {
    bool convex = false;
    double min_cross = 0.0;  // most negative oriented cross product, scale-normalized
    std::vector<std::size_t> corner_indices;
    std::vector<double> corner_thetas;
};

/// Convexity of the region enclosed by a full trace, by the signs of discrete
/// cross products of consecutive edges; corners are vertices whose turn angle
/// exceeds 10x the local median (window of 49) or whose cross product flips
/// negative beyond tolerance.
inline ConvexityReport convexity_check(const BallTrace& t) {
    const std::size_t n = t.thetas.size();
    if (n < 64) throw std::invalid_argument("convexity_check: need >= 64 angles");
    for (double s : t.s_values)
        if (!std::isfinite(s)) throw std::domain_error("convexity_check: unbounded ball");

    std::vector<double> px(n), py(n);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        px[i] = t.s_values[i] * std::cos(t.thetas[i]);
        py[i] = t.s_values[i] * std::sin(t.thetas[i]);
        scale = std::max(scale, t.s_values[i]);
    }
    std::vector<double> cross(n), turn(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = (i + 1) % n, k = (i + 2) % n;
        double ax = px[j] - px[i], ay = py[j] - py[i];
        double bx = px[k] - px[j], by = py[k] - py[j];
        cross[j] = ax * by - ay * bx;
        turn[j] = std::atan2(cross[j], ax * bx + ay * by);
    }
    ConvexityReport rep;
    double tol = 1e-8 * scale * scale;
    rep.min_cross = *std::min_element(cross.begin(), cross.end());
    rep.convex = rep.min_cross >= -tol;

    const std::size_t half = 24;
    std::vector<char> is_corner(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> window;
        window.reserve(2 * half + 1);
        for (std::size_t o = 0; o <= 2 * half; ++o)
            window.push_back(std::abs(turn[(i + n - half + o) % n]));
        std::nth_element(window.begin(), window.begin() + half, window.end());
        double med = window[half];
        if (std::abs(turn[i]) > 10.0 * std::max(med, 1e-15) || cross[i] < -tol) is_corner[i] = 1;
    }
    // keep the strongest vertex of each consecutive run
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_corner[i]) continue;
        std::size_t best = i, j = i;
        while (j < n && is_corner[j]) {
            if (std::abs(turn[j]) > std::abs(turn[best])) best = j;
            ++j;
        }
        rep.corner_indices.push_back(best);
        rep.corner_thetas.push_back(t.thetas[best]);
        i = j;
    }
    return rep;
}

struct CornerPrediction {
    double theta0 = 0.0;      // angle of the corner, measured from the origin-facing axis
    double slope_jump = 0.0;  // outward one-sided limit of s'(theta); the inward limit is 0
};

/// Inner corner of the max-weight sphere S(e1, r) for the weight max(x,y)^q:
/// the trace satisfies s(theta) = r up to theta0 = arccos(r/2), then turns
/// with one-sided slope r^2 q sqrt(4-r^2) / (2 - r^2 q).
inline CornerPrediction infty_q_corner(double q, double r) {
    if (!(q > 0.0 && q <= 1.0)) throw std::domain_error("infty_q_corner: q outside (0,1]");
    if (!(r > 0.0 && r < 2.0)) throw std::domain_error("infty_q_corner: r outside (0,2)");
    if (r * r * q >= 2.0) throw std::domain_error("infty_q_corner: r^2 q >= 2 out of range");
    CornerPrediction c;
    c.theta0 = std::acos(0.5 * r);
    c.slope_jump = r * r * q * std::sqrt(4.0 - r * r) / (2.0 - r * r * q);
    return c;
}

/// Localize a kink of s(theta) by recursive grid zoom on the discrete second
/// difference (maximal at a slope discontinuity).
template <class SolveS>
double refine_corner(SolveS&& s_at, double lo, double hi, int rounds = 5, std::size_t pts = 97) {
    if (pts < 5) throw std::invalid_argument("refine_corner: need >= 5 grid points");
    for (int round = 0; round < rounds; ++round) {
        double h = (hi - lo) / static_cast<double>(pts - 1);
        std::vector<double> v(pts);
        for (std::size_t i = 0; i < pts; ++i) v[i] = s_at(lo + h * static_cast<double>(i));
        std::size_t best = 1;
        double best_d = -1.0;
        for (std::size_t i = 1; i + 1 < pts; ++i) {
            double d2 = std::abs(v[i - 1] - 2.0 * v[i] + v[i + 1]);
            if (d2 > best_d) {
                best_d = d2;
                best = i;
            }
        }
        double c = lo + h * static_cast<double>(best);
        lo = c - 2.0 * h;
        hi = c + 2.0 * h;
    }
    return 0.5 * (lo + hi);
}

/// One-sided limit of s'(theta) at theta0 from the side of `sign`, by a
/// least-squares quadratic fit over points offset past the kink.
template <class SolveS>
double one_sided_slope(SolveS&& s_at, double theta0, int sign, double offset = 2e-5,
                       double h = 1e-4, std::size_t npts = 8) {
    if (npts < 3) throw std::invalid_argument("one_sided_slope: need >= 3 points");
    double S0 = 0, S1 = 0, S2 = 0, S3 = 0, S4 = 0, Y0 = 0, Y1 = 0, Y2 = 0;
    for (std::size_t j = 0; j < npts; ++j) {
        double t = static_cast<double>(sign) * (offset + h * static_cast<double>(j));
        double y = s_at(theta0 + t);
        double t2 = t * t;
        S0 += 1.0; S1 += t; S2 += t2; S3 += t2 * t; S4 += t2 * t2;
        Y0 += y; Y1 += y * t; Y2 += y * t2;
    }
    // normal equations for y ~ b0 + b1 t + b2 t^2, solved for b1 by Cramer
    double det = S0 * (S2 * S4 - S3 * S3) - S1 * (S1 * S4 - S2 * S3) + S2 * (S1 * S3 - S2 * S2);
    double det1 = S0 * (Y1 * S4 - S3 * Y2) - Y0 * (S1 * S4 - S2 * S3) + S2 * (S1 * Y2 - Y1 * S2);
    return det1 / det;
}

/// Radius small enough that the traced sphere has Euclidean diameter at most
/// frac * norm(z), the default regime for local convexity checks.
inline double small_radius_for(const WeightFunction& m, const Vec& z, double frac = 0.1) {
    double nz = norm(z);
    if (nz == 0.0) throw std::invalid_argument("small_radius_for: z must be nonzero");
    double target = 0.5 * frac * nz;  // cap on max s over directions
    double mzz = m(nz, nz);
    double r = mzz > 0.0 && std::isfinite(mzz) ? target / mzz : target;
    for (int it = 0; it < 60; ++it) {
        BallTrace t = trace_sphere(m, z, r, 32);
        double ms = 0.0;
        for (double s : t.s_values) ms = std::max(ms, s);
        if (std::isfinite(ms) && ms <= target) return r;
        r *= 0.5;
    }
    throw std::runtime_error("small_radius_for: no admissible radius found");
}

}  // namespace relmet
