#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "relmet/numeric.hpp"
#include "relmet/vec.hpp"

namespace relmet {

/// Scalar core of the alpha-quasihyperbolic distance between points with
/// magnitudes r1, r2 at angle theta (as seen from the origin):
///   (1/beta) sqrt(r1^{2b} + r2^{2b} - 2 r1^b r2^b cos(b theta)),  b = 1-alpha.
/// Evaluated in the cancellation-free arrangement
///   (1/b) sqrt((r1^b - r2^b)^2 + 4 r1^b r2^b sin^2(b theta / 2))
/// which stays accurate uniformly in b, including b -> 0.
inline double k_alpha_polar(double alpha, double r1, double r2, double theta) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::domain_error("k_alpha: alpha outside [0,1)");
    double b = 1.0 - alpha;
    if (r1 < 0.0 || r2 < 0.0) throw std::domain_error("k_alpha: negative magnitude");
    if (r1 == 0.0 && r2 == 0.0) return 0.0;
    if (r1 == 0.0) return std::pow(r2, b) / b;
    if (r2 == 0.0) return std::pow(r1, b) / b;
    double bb = std::pow(r2, b);
    double diff = bb * std::expm1(b * std::log(r1 / r2));  // r1^b - r2^b
    double aa = bb + diff;
    double s = 2.0 * std::sin(0.5 * b * theta);
    return std::sqrt(diff * diff + aa * bb * s * s) / b;
}

/// Quasihyperbolic distance with weight |.|^{-1} (the alpha = 1 member):
/// sqrt(theta^2 + log^2(|x|/|y|)).
inline double k_one(const Vec& x, const Vec& y) {
    double nx = norm(x), ny = norm(y);
    if (nx == 0.0 || ny == 0.0) throw std::domain_error("k_one: zero point");
    double th = angle(x, y);
    double lr = std::log(nx / ny);
    return std::sqrt(th * th + lr * lr);
}

/// Closed-form k_alpha on R^n minus the origin.  For beta below 1e-6 the
/// formula's leading behaviour is the alpha = 1 distance, which is returned
/// directly (relative error O(beta)).
inline double k_alpha(double alpha, const Vec& x, const Vec& y) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::domain_error("k_alpha: alpha outside [0,1)");
    double nx = norm(x), ny = norm(y);
    if (nx == 0.0 || ny == 0.0) throw std::domain_error("k_alpha: zero point");
    if (1.0 - alpha < 1e-6) return k_one(x, y);
    return k_alpha_polar(alpha, nx, ny, angle(x, y));
}

/// Analytic bound (|x|^b + |y|^b)/b >= k_alpha(x, y).
inline double k_upper_bound(double alpha, const Vec& x, const Vec& y) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::domain_error("k_upper_bound: alpha outside [0,1)");
    double nx = norm(x), ny = norm(y);
    if (nx == 0.0 || ny == 0.0) throw std::domain_error("k_upper_bound: zero point");
    double b = 1.0 - alpha;
    return (std::pow(nx, b) + std::pow(ny, b)) / b;
}

/// Analytic geodesic of k_alpha in polar form.  After normalizing so the
/// nearer endpoint has magnitude 1 and sits at angle 0, the geodesic is
///   r(theta)^beta * sin(beta*theta + c2) = c1,   theta in [0, theta1],
/// with sin(c2) = c1 and c2 obtuse exactly when r^beta cos(beta*theta1) >= 1.
/// `scale` restores the normalization; `frame` lifts the 2-plane back to R^n.
/// Radial pairs degenerate to a segment flagged by `radial`.
struct GeodesicPolar {
    double c1 = 0.0;
    double c2 = 0.0;
    double beta = 1.0;
    double theta1 = 0.0;   // theta_range = [0, theta1]
    double scale = 1.0;    // magnitude of the nearer endpoint
    double r_far = 1.0;    // normalized magnitude of the farther endpoint
    bool radial = false;
    PlaneFrame frame;

    double cos_c2() const { return std::cos(c2); }

    /// Normalized radius at angle theta; sin(beta*theta + c2) expanded through
    /// sin(c2) = c1 so the evaluation is exact in the stored constants.
    double r(double theta) const {
        if (radial) throw std::domain_error("GeodesicPolar::r: radial representation");
        double s = c1 * std::cos(beta * theta) + cos_c2() * std::sin(beta * theta);
        return std::pow(c1 / s, 1.0 / beta);
    }

    /// Point in R^n at parameter t in [0,1] (t=0 the nearer endpoint).
    Vec point(double t) const {
        if (radial) {
            double rr = std::pow(r_far, t);
            return scaled(frame.u, scale * rr);
        }
        double th = t * theta1;
        double rr = r(th);
        return in_plane(frame, scale * rr * std::cos(th), scale * rr * std::sin(th));
    }

    std::vector<Vec> sample(std::size_t n) const {
        if (n < 2) throw std::invalid_argument("GeodesicPolar::sample: need >= 2 points");
        std::vector<Vec> pts(n);
        for (std::size_t i = 0; i < n; ++i)
            pts[i] = point(static_cast<double>(i) / static_cast<double>(n - 1));
        return pts;
    }

    /// Geodesic length in metric units, from the stored constants.
    double length() const {
        double b = beta;
        if (radial) return (std::pow(r_far, b) - 1.0) / b * std::pow(scale, b);
        double co2 = cos_c2();
        double s_end = c1 * std::cos(b * theta1) + co2 * std::sin(b * theta1);
        double cot0 = co2 / c1;
        double cot1 = (co2 * std::cos(b * theta1) - c1 * std::sin(b * theta1)) / s_end;
        return c1 / b * (cot0 - cot1) * std::pow(scale, b);
    }
};

inline GeodesicPolar geodesic(double alpha, const Vec& x, const Vec& y) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("geodesic: alpha outside (0,1)");
    double nx = norm(x), ny = norm(y);
    if (nx == 0.0 || ny == 0.0) throw std::domain_error("geodesic: zero point");
    const Vec& nearp = nx >= ny ? y : x;
    const Vec& farp = nx >= ny ? x : y;
    GeodesicPolar g;
    g.beta = 1.0 - alpha;
    g.scale = std::min(nx, ny);
    g.r_far = std::max(nx, ny) / g.scale;
    g.theta1 = angle(x, y);
    g.frame = plane_frame(nearp, farp);
    if (g.theta1 < 1e-14) {
        g.radial = true;
        g.theta1 = 0.0;
        return g;
    }
    double b = g.beta;
    double rb = std::pow(g.r_far, b);
    double sb = std::sin(b * g.theta1), cb = std::cos(b * g.theta1);
    double D = std::sqrt(1.0 + rb * rb - 2.0 * rb * cb);
    g.c1 = rb * sb / D;
    if (g.c1 > 1.0) g.c1 = 1.0;  // clamp roundoff at the right-angle branch point
    bool obtuse = rb * cb >= 1.0;
    g.c2 = obtuse ? 3.14159265358979323846 - std::asin(g.c1) : std::asin(g.c1);
    return g;
}

/// rho-length of a polyline under the density |z|^{-alpha}: per-segment
/// adaptive Simpson of |gamma'| / |gamma|^alpha.  `max_depth` caps the
/// per-segment refinement recursion.
inline double path_length(double alpha, const std::vector<Vec>& pts, int max_depth = 40,
                          double rel_tol = 1e-10) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::domain_error("path_length: alpha outside [0,1)");
    if (pts.size() < 2) throw std::invalid_argument("path_length: need >= 2 samples");
    for (const Vec& p : pts)
        if (norm(p) < 1e-300) throw std::domain_error("path_length: path touches the origin");
    if (alpha == 0.0) {
        double L = 0.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) L += dist(pts[i], pts[i + 1]);
        return L;
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const Vec& p = pts[i];
        const Vec& q = pts[i + 1];
        double L = dist(p, q);
        if (L == 0.0) continue;
        auto integrand = [&](double t) {
            double s = 0.0;
            for (std::size_t j = 0; j < p.size(); ++j) {
                double c = p[j] + t * (q[j] - p[j]);
                s += c * c;
            }
            return std::pow(s, -0.5 * alpha);
        };
        total += L * adaptive_simpson(integrand, 0.0, 1.0, rel_tol, max_depth);
    }
    return total;
}

struct ChainReport {
    std::array<double, 5> values{};
    bool nondecreasing = false;
};

namespace detail {

inline double beta_difference_quotient(double b, double a2, double b2) {
    // (a2^b - b2^b)/(b (a2 - b2)), continued across the diagonal
    double m = std::max(a2, b2);
    if (std::abs(a2 - b2) < 1e-8 * m) return std::pow(0.5 * (a2 + b2), b - 1.0);
    double pb = std::pow(b2, b);
    double diff = pb * std::expm1(b * std::log(a2 / b2));
    return diff / (b * (a2 - b2));
}

}  // namespace detail

/// The five expressions of the comparison chain, in order:
///   (|x|^b-|y|^b)/(b(|x|-|y|)),  k_a(x,y)/|x-y|,  k_a(-|x|,|y|)/(|x|+|y|),
///   (|x|^b+|y|^b)/(b(|x|+|y|)),  (2^a/b)|x-y|^{-a}.
/// The flag asserts they are nondecreasing left to right (1e-10 relative).
inline ChainReport inequality_chain_check(double alpha, const Vec& x, const Vec& y) {
    double nx = norm(x), ny = norm(y);
    if (nx == 0.0 || ny == 0.0) throw std::domain_error("inequality_chain_check: zero point");
    double d = dist(x, y);
    if (d == 0.0) throw std::domain_error("inequality_chain_check: coincident points");
    double b = 1.0 - alpha;
    ChainReport rep;
    rep.values[0] = detail::beta_difference_quotient(b, nx, ny);
    rep.values[1] = k_alpha(alpha, x, y) / d;
    rep.values[2] = k_alpha_polar(alpha, nx, ny, 3.14159265358979323846) / (nx + ny);
    rep.values[3] = (std::pow(nx, b) + std::pow(ny, b)) / (b * (nx + ny));
    rep.values[4] = std::pow(2.0, alpha) / b * std::pow(d, -alpha);
    rep.nondecreasing = true;
    for (int i = 0; i < 4; ++i)
        if (rep.values[i + 1] < rep.values[i] * (1.0 - 1e-10)) rep.nondecreasing = false;
    return rep;
}

}  // namespace relmet
