#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace relmet {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double dist(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scaled(const Vec& a, double t) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = t * a[i];
    return r;
}

inline Vec lerp(const Vec& a, const Vec& b, double t) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + t * (b[i] - a[i]);
    return r;
}

/// Angle at the origin between x and y, in [0, pi].  Uses Kahan's
/// two-argument arctangent form 2 atan2(|x ny - y nx|, |x ny + y nx|),
/// which stays accurate at both ends of the range where acos of a clamped
/// cosine (or a Gram-determinant sine) loses half the digits.
inline double angle(const Vec& x, const Vec& y) {
    double nx = std::sqrt(dot(x, x)), ny = std::sqrt(dot(y, y));
    if (nx == 0.0 || ny == 0.0) throw std::domain_error("angle: zero vector");
    double s2 = 0.0, d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double a = x[i] * ny, b = y[i] * nx;
        s2 += (a + b) * (a + b);
        d2 += (a - b) * (a - b);
    }
    return 2.0 * std::atan2(std::sqrt(d2), std::sqrt(s2));
}

/// Orthonormal 2-frame {u, v} with u along `base` and v chosen in the plane
/// spanned by base and other, oriented so that dot(other, v) >= 0.  When the
/// two are collinear v is any deterministic orthogonal completion.
struct PlaneFrame {
    Vec u, v;
};

inline PlaneFrame plane_frame(const Vec& base, const Vec& other) {
    double nb = norm(base);
    if (nb == 0.0) throw std::domain_error("plane_frame: zero base");
    Vec u = scaled(base, 1.0 / nb);
    Vec w = sub(other, scaled(u, dot(other, u)));
    double nw = norm(w);
    if (nw > 1e-14 * norm(other)) return {u, scaled(w, 1.0 / nw)};
    if (u.size() < 2) throw std::domain_error("plane_frame: need dimension >= 2");
    // collinear: complete with the coordinate axis least aligned with u
    std::size_t k = 0;
    double best = std::abs(u[0]);
    for (std::size_t i = 1; i < u.size(); ++i)
        if (std::abs(u[i]) < best) { best = std::abs(u[i]); k = i; }
    Vec e(u.size(), 0.0);
    e[k] = 1.0;
    Vec v = sub(e, scaled(u, u[k]));
    return {u, scaled(v, 1.0 / norm(v))};
}

inline Vec in_plane(const PlaneFrame& f, double a, double b) {
    Vec r(f.u.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a * f.u[i] + b * f.v[i];
    return r;
}

}  // namespace relmet
