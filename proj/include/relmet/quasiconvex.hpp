#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "relmet/means.hpp"
#include "relmet/numeric.hpp"
#include "relmet/quasihyperbolic.hpp"
#include "relmet/relative.hpp"
#include "relmet/vec.hpp"
#include "relmet/weight.hpp"

namespace relmet {

struct QuasiconvexityEstimate {
    double c_estimate = 0.0;
    double argmax_r = 1.0;      // +inf when the large-ratio limit dominates
    double argmax_x = std::numeric_limits<double>::quiet_NaN();  // 2-D scans only
    double argmax_y = std::numeric_limits<double>::quiet_NaN();
    double lower_bound = 0.0;   // largest objective value certified by evaluation
    double upper_bound = std::numeric_limits<double>::infinity();
    bool converged = false;
};

namespace detail {

// k_alpha(-x e1, y e1) / (x + y) * M(x, y); the alpha = 1 member uses the
// logarithmic distance sqrt(pi^2 + log^2(x/y)).
template <class M>
double antipodal_objective(double alpha, double x, double y, M&& m) {
    double k;
    if (alpha < 1.0) {
        k = k_alpha_polar(alpha, x, y, 3.14159265358979323846);
    } else {
        double lr = std::log(x / y);
        k = std::sqrt(9.86960440108935862 + lr * lr);
    }
    return k / (x + y) * m(x, y);
}

}  // namespace detail

/// Sharp-constant scan for a normalized homogeneous weight: by homogeneity the
/// supremum over antipodal pairs reduces to one radial ratio r >= 1.  The scan
/// covers r in [1, 1e8] on a log grid, refines the best bracket by golden
/// section, and checks the analytic r -> infinity limit M(1,0)/(1-alpha).
/// Growth across the last two decades marks the supremum as divergent unless
/// it is the expected climb toward that finite limit.
inline QuasiconvexityEstimate c_M_homogeneous(const WeightFunction& m) {
    if (std::abs(m(1.0, 1.0) - 1.0) > 1e-9)
        throw std::invalid_argument("c_M_homogeneous: weight must satisfy M(1,1) = 1");
    if (!m.quasimean_exponent())
        throw std::invalid_argument("c_M_homogeneous: weight lacks a quasimean exponent");
    double alpha = *m.quasimean_exponent();
    auto obj = [&](double r) { return detail::antipodal_objective(alpha, r, 1.0, m); };

    const std::size_t n = 2048;
    std::vector<double> grid = log_grid(1.0, 1e8, n);
    QuasiconvexityEstimate est;
    std::size_t best_i = 0;
    double best_v = -std::numeric_limits<double>::infinity();
    std::vector<double> decade_max(9, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double v = obj(grid[i]);
        if (v > best_v) {
            best_v = v;
            best_i = i;
        }
        int dec = std::min(8, static_cast<int>(std::floor(std::log10(grid[i]) + 1e-12)));
        decade_max[dec] = std::max(decade_max[dec], v);
    }
    bool growing = decade_max[7] > decade_max[6] * 1.001;

    double lo = grid[best_i == 0 ? 0 : best_i - 1];
    double hi = grid[std::min(best_i + 1, grid.size() - 1)];
    auto [arg, val] = golden_max(obj, lo, hi, 1e-12);
    if (val < best_v) {
        arg = grid[best_i];
        val = best_v;
    }
    est.lower_bound = val;
    est.argmax_r = arg;
    est.c_estimate = val;

    double tail = std::numeric_limits<double>::infinity();
    if (alpha < 1.0) {
        tail = m(1.0, 0.0) / (1.0 - alpha);
        if (std::isfinite(tail) && tail > est.c_estimate) {
            est.c_estimate = tail;
            est.argmax_r = std::numeric_limits<double>::infinity();
            est.lower_bound = std::max(est.lower_bound, best_v);
        }
    }
    bool diverging =
        growing && !(std::isfinite(tail) && decade_max[7] <= tail * (1.0 + 1e-9));
    if (diverging) {
        est.converged = false;
        est.c_estimate = std::numeric_limits<double>::infinity();
        est.argmax_r = std::numeric_limits<double>::infinity();
        est.upper_bound = std::numeric_limits<double>::infinity();
    } else {
        est.converged = true;
        est.upper_bound = est.c_estimate * (1.0 + 1e-9);
    }
    return est;
}

/// Quasiconvexity constant of the (p,q) relative distance, computed through
/// the normalized weight A_p^q (scaling a weight by a constant rescales
/// distances and path lengths alike, so the constant is unchanged).
inline QuasiconvexityEstimate c_pq(double p, double q) {
    if (q == 0.0) {
        QuasiconvexityEstimate est;
        est.c_estimate = est.lower_bound = est.upper_bound = 1.0;
        est.argmax_r = 1.0;
        est.converged = true;
        return est;
    }
    return c_M_homogeneous(power_mean_weight(p, q));
}

/// Analytic bracket for c of the (p,q) family, q in (0,1):
///   2^{-q/p}/(1-q)  <=  c  <=  max{2^{q(1-1/p)}, 1}/(1-q).
inline std::pair<double, double> c_pq_bounds(double p, double q) {
    if (!(q > 0.0 && q <= 1.0)) throw std::domain_error("c_pq_bounds: q outside (0,1]");
    if (q == 1.0) {
        double inf = std::numeric_limits<double>::infinity();
        return {inf, inf};
    }
    double invp = std::isinf(p) || p > 1e6 ? 0.0 : 1.0 / p;
    double lower = std::pow(2.0, -q * invp) / (1.0 - q);
    double upper = std::max(std::pow(2.0, q * (1.0 - invp)), 1.0) / (1.0 - q);
    return {lower, upper};
}

/// Closed form of c for q = 1/2: max{sqrt(2), 2^{1 - 1/(2p)}}.
inline double c_pq_half_closed_form(double p) {
    double invp = std::isinf(p) || p > 1e6 ? 0.0 : 1.0 / p;
    return std::max(std::sqrt(2.0), std::pow(2.0, 1.0 - 0.5 * invp));
}

/// Non-homogeneous weights: direct 2-D scan of the antipodal objective over a
/// log grid with per-axis golden refinement at the best cell.
template <class M>
QuasiconvexityEstimate c_M_estimate(M&& m, double alpha, double lo = 1e-4, double hi = 1e4,
                                    std::size_t n = 192) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("c_M_estimate: alpha outside [0,1]");
    std::vector<double> grid = log_grid(lo, hi, n);
    QuasiconvexityEstimate est;
    std::size_t bi = 0, bj = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double v = detail::antipodal_objective(alpha, grid[i], grid[j], m);
            if (v > best) {
                best = v;
                bi = i;
                bj = j;
            }
        }
    double x = grid[bi], y = grid[bj];
    for (int round = 0; round < 3; ++round) {
        auto [ax, vx] = golden_max(
            [&](double t) { return detail::antipodal_objective(alpha, t, y, m); },
            grid[bi == 0 ? 0 : bi - 1], grid[std::min(bi + 1, n - 1)], 1e-12);
        if (vx > best) {
            best = vx;
            x = ax;
        }
        auto [ay, vy] = golden_max(
            [&](double t) { return detail::antipodal_objective(alpha, x, t, m); },
            grid[bj == 0 ? 0 : bj - 1], grid[std::min(bj + 1, n - 1)], 1e-12);
        if (vy > best) {
            best = vy;
            y = ay;
        }
    }
    est.c_estimate = est.lower_bound = best;
    est.argmax_x = x;
    est.argmax_y = y;
    est.argmax_r = x >= y ? x / y : y / x;
    est.converged = bi + 1 < n && bj + 1 < n && bi > 0 && bj > 0;
    est.upper_bound = est.converged ? best * (1.0 + 1e-6)
                                    : std::numeric_limits<double>::infinity();
    return est;
}

/// Length of a polyline in the relative distance of weight m, as the sum of
/// consecutive-pair distances (the inner-length partial sum).
template <class M>
double rho_path_length(M&& m, const std::vector<Vec>& pts) {
    if (pts.size() < 2) throw std::invalid_argument("rho_path_length: need >= 2 samples");
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        total += detail::safe_ratio(dist(pts[i], pts[i + 1]),
                                    m(norm(pts[i]), norm(pts[i + 1])));
    return total;
}

/// Composite path between x and y made of one radial leg (geometric radius
/// steps) and one circular arc (uniform angle steps); the arc runs at the
/// inner or the outer of the two radii.
inline std::vector<Vec> composite_radial_arc_path(const Vec& x, const Vec& y, std::size_t n,
                                                  bool arc_at_inner) {
    double nx = norm(x), ny = norm(y);
    if (nx == 0.0 || ny == 0.0) throw std::invalid_argument("composite_radial_arc_path: zero endpoint");
    if (n < 4) throw std::invalid_argument("composite_radial_arc_path: need >= 4 samples");
    const Vec& outer = nx >= ny ? x : y;
    const Vec& inner = nx >= ny ? y : x;
    double a = std::max(nx, ny), b = std::min(nx, ny);
    double th = angle(x, y);
    PlaneFrame fr = plane_frame(outer, inner);  // u along the outer point
    std::size_t n_rad = n / 2, n_arc = n - n_rad;
    std::vector<Vec> pts;
    pts.reserve(n + 1);
    // Walk from the outer endpoint to the inner one, reversing at the end if
    // x was the inner one.
    if (arc_at_inner) {
        for (std::size_t i = 0; i <= n_rad; ++i)
            pts.push_back(scaled(fr.u, a * std::pow(b / a, static_cast<double>(i) / n_rad)));
        for (std::size_t i = 1; i <= n_arc; ++i) {
            double t = th * static_cast<double>(i) / n_arc;
            pts.push_back(in_plane(fr, b * std::cos(t), b * std::sin(t)));
        }
    } else {
        for (std::size_t i = 0; i <= n_arc; ++i) {
            double t = th * static_cast<double>(i) / n_arc;
            pts.push_back(in_plane(fr, a * std::cos(t), a * std::sin(t)));
        }
        for (std::size_t i = 1; i <= n_rad; ++i) {
            double rr = a * std::pow(b / a, static_cast<double>(i) / n_rad);
            pts.push_back(in_plane(fr, rr * std::cos(th), rr * std::sin(th)));
        }
    }
    if (nx < ny) std::reverse(pts.begin(), pts.end());
    return pts;
}

struct FFPathBound {
    double length_arc_inner = 0.0;
    double length_arc_outer = 0.0;
    double path_length = 0.0;  // the better of the two
    double distance = 0.0;
    double ratio = 1.0;
};

/// Path-length bound for product weights M(u,v) = f(|u|) f(|v|): measures the
/// two radial+arc composites against the point distance.  f is normalized by
/// f(0), which must be positive.
inline FFPathBound ff_path_length_bound(const std::function<double(double)>& f, const Vec& x,
                                        const Vec& y, std::size_t samples = 4096) {
    double f0 = f(0.0);
    if (!(f0 > 0.0)) throw std::invalid_argument("ff_path_length_bound: f(0) must be positive");
    auto g = [&](double t) { return f(t) / f0; };
    auto m = [&](double u, double v) { return g(u) * g(v); };
    double d = dist(x, y);
    FFPathBound out;
    out.distance = detail::safe_ratio(d, m(norm(x), norm(y)));
    if (d == 0.0) return out;
    out.length_arc_inner = rho_path_length(m, composite_radial_arc_path(x, y, samples, true));
    out.length_arc_outer = rho_path_length(m, composite_radial_arc_path(x, y, samples, false));
    out.path_length = std::min(out.length_arc_inner, out.length_arc_outer);
    out.ratio = out.path_length / out.distance;
    return out;
}

/// Geodesic polyline of the weight M(u,v) = |u||v|: the image under the unit
/// inversion z -> z/|z|^2 of the straight segment between the inverted
/// endpoints (inversion is an isometry onto the Euclidean metric there).
inline std::vector<Vec> xy_geodesic_path(const Vec& x, const Vec& y, std::size_t n) {
    double nx2 = dot(x, x), ny2 = dot(y, y);
    if (nx2 == 0.0 || ny2 == 0.0) throw std::invalid_argument("xy_geodesic_path: zero endpoint");
    if (n < 2) throw std::invalid_argument("xy_geodesic_path: need >= 2 samples");
    Vec xi = scaled(x, 1.0 / nx2), yi = scaled(y, 1.0 / ny2);
    std::vector<Vec> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec p = lerp(xi, yi, static_cast<double>(i) / static_cast<double>(n - 1));
        double p2 = dot(p, p);
        if (p2 == 0.0) throw std::domain_error("xy_geodesic_path: segment through the origin");
        pts[i] = scaled(p, 1.0 / p2);
    }
    pts.front() = x;
    pts.back() = y;
    return pts;
}

/// Ratio of the straight-segment length to the point distance.
template <class M>
double straight_segment_ratio(M&& m, const Vec& x, const Vec& y, std::size_t n = 4096) {
    double d = dist(x, y);
    if (d == 0.0) return 1.0;
    std::vector<Vec> pts(n);
    for (std::size_t i = 0; i < n; ++i)
        pts[i] = lerp(x, y, static_cast<double>(i) / static_cast<double>(n - 1));
    double len = rho_path_length(m, pts);
    double rho_xy = detail::safe_ratio(d, m(norm(x), norm(y)));
    return len / rho_xy;
}

struct OneQuasiconvexityReport {
    double rho = 0.0;           // distance between -r e1 and r e1
    double crossing_inf = 0.0;  // best two-leg length through the separating hyperplane
    double infinity_route = 0.0;  // twice the radial cost of escaping to infinity
    double lower_bound = 0.0;   // min of the two route bounds
    double margin = 0.0;        // lower_bound / rho - 1
    bool exceeds = false;       // true when every path is strictly longer than rho
};

/// Certificate machinery for the question "is this weight 1-quasiconvex".
/// Any path from -r e1 to r e1 either crosses the hyperplane x1 = 0, whose
/// cheapest two-leg crossing is inf_b [rho(-r e1, b e2) + rho(b e2, r e1)],
/// or escapes through infinity at cost at least 2 * int_r^inf dz / M(z,z).
/// A strict excess over rho(-r e1, r e1) rules the weight out.
template <class M>
OneQuasiconvexityReport one_quasiconvex_certificate(M&& m, double r = 1.0) {
    OneQuasiconvexityReport rep;
    rep.rho = detail::safe_ratio(2.0 * r, m(r, r));

    auto crossing = [&](double b) {
        double leg = std::hypot(r, b);
        return detail::safe_ratio(leg, m(r, b)) + detail::safe_ratio(leg, m(b, r));
    };
    std::vector<double> bs = log_grid(1e-9 * r, 1e9 * r, 1024);
    bs.insert(bs.begin(), 0.0);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < bs.size(); ++i) {
        double v = crossing(bs[i]);
        if (v < best) {
            best = v;
            best_i = i;
        }
    }
    if (best_i > 0 && best_i + 1 < bs.size()) {
        auto [arg, negv] = golden_max([&](double b) { return -crossing(b); }, bs[best_i - 1],
                                      bs[best_i + 1], 1e-12);
        (void)arg;
        best = std::min(best, -negv);
    }
    rep.crossing_inf = best;

    // Truncated decade sums underestimate the escape integral, keeping the
    // certificate a genuine lower bound; flat contributions mean divergence.
    double route = 0.0, prev = std::numeric_limits<double>::infinity();
    bool divergent = false;
    for (int j = 0; j < 24; ++j) {
        double zlo = r * std::pow(10.0, j), zhi = r * std::pow(10.0, j + 1);
        double part = adaptive_simpson(
            [&](double z) { return 1.0 / m(z, z); }, zlo, zhi, 1e-10, 36);
        route += part;
        if (j == 23 && part > prev * 0.999) divergent = true;
        prev = part;
    }
    rep.infinity_route = divergent ? std::numeric_limits<double>::infinity() : 2.0 * route;

    rep.lower_bound = std::min(rep.crossing_inf, rep.infinity_route);
    rep.margin = rep.lower_bound / rep.rho - 1.0;
    rep.exceeds = rep.lower_bound > rep.rho * (1.0 + 1e-9);
    return rep;
}

}  // namespace relmet
