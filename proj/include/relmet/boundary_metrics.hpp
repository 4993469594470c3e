#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "relmet/mobius.hpp"
#include "relmet/numeric.hpp"
#include "relmet/relative.hpp"
#include "relmet/vec.hpp"
#include "relmet/weight.hpp"

namespace relmet {

/// Boundary description of a domain in the extended space.  Cross-ratio
/// metrics only consult the boundary, so the domain is represented by it:
/// either an explicit finite point set, a full sphere, or a hyperplane
/// (implicitly together with the point at infinity).
struct DomainSpec {
    enum class Kind { FinitePoints, Sphere, Plane };

    Kind kind = Kind::FinitePoints;
    std::vector<ExtendedPoint> points;  // FinitePoints
    Vec center;                         // Sphere
    double radius = 0.0;
    Vec plane_point, plane_normal;      // Plane (boundary includes infinity)
    std::size_t samples = 2048;         // sampling density for continuous kinds

    static DomainSpec finite(std::vector<ExtendedPoint> pts) {
        if (pts.size() < 2)
            throw std::invalid_argument("DomainSpec: boundary needs at least 2 points");
        DomainSpec g;
        g.kind = Kind::FinitePoints;
        g.points = std::move(pts);
        return g;
    }

    static DomainSpec sphere(Vec center, double radius, std::size_t samples = 2048) {
        if (!(radius > 0.0)) throw std::invalid_argument("DomainSpec: sphere radius must be positive");
        DomainSpec g;
        g.kind = Kind::Sphere;
        g.center = std::move(center);
        g.radius = radius;
        g.samples = samples;
        return g;
    }

    static DomainSpec half_space(Vec plane_point, Vec plane_normal, std::size_t samples = 2048) {
        double nn = norm(plane_normal);
        if (nn == 0.0) throw std::invalid_argument("DomainSpec: plane normal must be nonzero");
        DomainSpec g;
        g.kind = Kind::Plane;
        g.plane_point = std::move(plane_point);
        g.plane_normal = scaled(plane_normal, 1.0 / nn);
        g.samples = samples;
        return g;
    }

    static DomainSpec punctured_space(std::size_t dim) {
        return finite({ExtendedPoint::at(Vec(dim, 0.0)), ExtendedPoint::infinity()});
    }
};

namespace detail {

template <class Obj>
double finite_pair_sup(const std::vector<ExtendedPoint>& pts, Obj&& obj) {
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, obj(pts[i], pts[j]));
    return best;
}

// Alternating per-axis golden-section polish of a two-parameter objective.
template <class H>
double polish_pair(H&& h, double pa, double pb, double bra, double brb, int rounds = 3) {
    double best = h(pa, pb);
    for (int round = 0; round < rounds; ++round) {
        auto [na, va] = golden_max([&](double t) { return h(t, pb); }, pa - bra, pa + bra, 1e-12);
        if (va > best) {
            best = va;
            pa = na;
        }
        auto [nb, vb] = golden_max([&](double t) { return h(pa, t); }, pb - brb, pb + brb, 1e-12);
        if (vb > best) {
            best = vb;
            pb = nb;
        }
        bra *= 0.25;
        brb *= 0.25;
    }
    return best;
}

// Extremal boundary pairs of a sphere lie on its great circle through the
// plane of x and y (confirmed against decimated full-sphere scans in the test
// suite); scan that circle pairwise, then polish both angles.
template <class Obj>
double sphere_pair_sup(const DomainSpec& G, const Vec& x, const Vec& y, Obj&& obj) {
    Vec bx = sub(x, G.center), by = sub(y, G.center);
    double tiny = 1e-9 * G.radius;
    PlaneFrame fr;
    if (norm(bx) > tiny)
        fr = plane_frame(bx, norm(by) > tiny ? by : bx);
    else if (norm(by) > tiny)
        fr = plane_frame(by, by);
    else {
        Vec u(x.size(), 0.0), v(x.size(), 0.0);
        u[0] = 1.0;
        v[1] = 1.0;
        fr = {u, v};
    }
    auto at = [&](double phi) {
        Vec p = add(G.center, add(scaled(fr.u, G.radius * std::cos(phi)),
                                  scaled(fr.v, G.radius * std::sin(phi))));
        return ExtendedPoint::at(std::move(p));
    };
    auto h = [&](double pa, double pb) { return obj(at(pa), at(pb)); };

    const std::size_t n = std::clamp<std::size_t>(G.samples, 64, 512);
    const double pi = 3.14159265358979323846;
    std::vector<double> phis(n);
    for (std::size_t i = 0; i < n; ++i) phis[i] = 2.0 * pi * static_cast<double>(i) / static_cast<double>(n);
    double best = 0.0, ba = 0.0, bb = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = h(phis[i], phis[j]);
            if (v > best) {
                best = v;
                ba = phis[i];
                bb = phis[j];
            }
        }
    double step = 2.0 * pi / static_cast<double>(n);
    return std::max(best, polish_pair(h, ba, bb, step, step));
}

// Extremal pairs of a hyperplane boundary lie on the line through the
// orthogonal projections of x and y, with the point at infinity as an extra
// candidate; the line is scanned under a tangent warp to reach far out.
template <class Obj>
double plane_pair_sup(const DomainSpec& G, const Vec& x, const Vec& y, Obj&& obj) {
    const Vec& nrm = G.plane_normal;
    auto project = [&](const Vec& v) {
        return sub(v, scaled(nrm, dot(sub(v, G.plane_point), nrm)));
    };
    Vec px = project(x), py = project(y);
    Vec w = sub(py, px);
    double wl = norm(w);
    double scale = std::max({wl, dist(x, px), dist(y, py)});
    if (scale == 0.0) scale = 1.0;
    if (wl > 1e-12 * scale)
        w = scaled(w, 1.0 / wl);
    else
        w = plane_frame(nrm, sub(x, G.plane_point)).v;  // any in-plane direction

    const double pi = 3.14159265358979323846;
    const double cap = 0.5 * pi - 1e-3;
    auto at = [&](double psi) {
        return ExtendedPoint::at(add(px, scaled(w, scale * std::tan(psi))));
    };
    auto h = [&](double pa, double pb) {
        return obj(at(std::clamp(pa, -cap, cap)), at(std::clamp(pb, -cap, cap)));
    };

    const std::size_t n = std::clamp<std::size_t>(G.samples, 64, 512) | 1;  // odd: include t = 0
    std::vector<double> psis(n);
    for (std::size_t i = 0; i < n; ++i)
        psis[i] = -cap + 2.0 * cap * static_cast<double>(i) / static_cast<double>(n - 1);
    ExtendedPoint inf_pt = ExtendedPoint::infinity();

    double best = 0.0, ba = 0.0, bb = 0.0;
    bool best_with_inf = false;
    for (std::size_t i = 0; i < n; ++i) {
        double vi = obj(at(psis[i]), inf_pt);
        if (vi > best) {
            best = vi;
            ba = psis[i];
            best_with_inf = true;
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = h(psis[i], psis[j]);
            if (v > best) {
                best = v;
                ba = psis[i];
                bb = psis[j];
                best_with_inf = false;
            }
        }
    }
    double step = 2.0 * cap / static_cast<double>(n - 1);
    if (best_with_inf) {
        auto [na, va] = golden_max([&](double t) { return obj(at(std::clamp(t, -cap, cap)), inf_pt); },
                                   ba - step, ba + step, 1e-12);
        (void)na;
        return std::max(best, va);
    }
    return std::max(best, polish_pair(h, ba, bb, step, step));
}

}  // namespace detail

/// Supremum of a boundary-pair objective over the domain's boundary.
template <class Obj>
double boundary_pair_sup(const DomainSpec& G, const Vec& x, const Vec& y, Obj&& obj) {
    switch (G.kind) {
        case DomainSpec::Kind::FinitePoints:
            return detail::finite_pair_sup(G.points, obj);
        case DomainSpec::Kind::Sphere:
            return detail::sphere_pair_sup(G, x, y, obj);
        case DomainSpec::Kind::Plane:
            return detail::plane_pair_sup(G, x, y, obj);
    }
    throw std::logic_error("boundary_pair_sup: unknown domain kind");
}

/// Representative point sample of the boundary (used for diameters, coarse
/// cross-checks and exports).
inline std::vector<ExtendedPoint> sample_boundary(const DomainSpec& G, std::size_t m = 256) {
    if (G.kind == DomainSpec::Kind::FinitePoints) return G.points;
    std::vector<ExtendedPoint> out;
    const double pi = 3.14159265358979323846;
    if (G.kind == DomainSpec::Kind::Sphere) {
        std::size_t dim = G.center.size();
        if (dim == 2) {
            for (std::size_t i = 0; i < m; ++i) {
                double phi = 2.0 * pi * static_cast<double>(i) / static_cast<double>(m);
                out.push_back(ExtendedPoint::at(
                    add(G.center, Vec{G.radius * std::cos(phi), G.radius * std::sin(phi)})));
            }
        } else if (dim == 3) {
            double golden = pi * (3.0 - std::sqrt(5.0));  // Fibonacci lattice
            for (std::size_t i = 0; i < m; ++i) {
                double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(m);
                double r = std::sqrt(std::max(0.0, 1.0 - z * z));
                double phi = golden * static_cast<double>(i);
                Vec p{r * std::cos(phi), r * std::sin(phi), z};
                out.push_back(ExtendedPoint::at(add(G.center, scaled(p, G.radius))));
            }
        } else {
            std::mt19937_64 rng(12345);
            for (std::size_t i = 0; i < m; ++i)
                out.push_back(ExtendedPoint::at(add(G.center, scaled(sphere_dir(rng, dim), G.radius))));
        }
        return out;
    }
    // Plane: tangent-warped grid on two in-plane axes, plus infinity.
    Vec axis1 = plane_frame(G.plane_normal, G.plane_normal).v;  // in-plane
    Vec axis2;
    {
        std::size_t dim = G.plane_normal.size();
        std::size_t bi = 0;
        double least = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < dim; ++i) {
            double align = std::abs(G.plane_normal[i]) + std::abs(axis1[i]);
            if (align < least) {
                least = align;
                bi = i;
            }
        }
        Vec e(dim, 0.0);
        e[bi] = 1.0;
        e = sub(e, scaled(G.plane_normal, dot(e, G.plane_normal)));
        e = sub(e, scaled(axis1, dot(e, axis1)));
        double l = norm(e);
        axis2 = l > 1e-12 ? scaled(e, 1.0 / l) : axis1;  // a line boundary has one axis
    }
    std::size_t k = std::max<std::size_t>(2, static_cast<std::size_t>(std::sqrt(static_cast<double>(m))));
    const double cap = 0.5 * pi - 1e-2;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            double a = std::tan(-cap + 2.0 * cap * static_cast<double>(i) / static_cast<double>(k - 1));
            double b = std::tan(-cap + 2.0 * cap * static_cast<double>(j) / static_cast<double>(k - 1));
            out.push_back(ExtendedPoint::at(
                add(G.plane_point, add(scaled(axis1, a), scaled(axis2, b)))));
        }
    out.push_back(ExtendedPoint::infinity());
    return out;
}

/// Chordal diameter of the boundary, q(dG), from the representative sample.
inline double chordal_boundary_diameter(const DomainSpec& G, std::size_t m = 256) {
    std::vector<ExtendedPoint> pts = sample_boundary(G, m);
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, chordal(pts[i], pts[j]));
    return best;
}

/// rho'_{M,G}(x,y) = sup over boundary pairs of 1 / M(|x,y,a,b|, |x,y,b,a|).
inline double rho_prime(const WeightFunction& m, const DomainSpec& G, const Vec& x, const Vec& y) {
    ExtendedPoint ex = ExtendedPoint::at(x), ey = ExtendedPoint::at(y);
    auto obj = [&](const ExtendedPoint& a, const ExtendedPoint& b) {
        double cr1 = cross_ratio(ex, ey, a, b);
        double cr2 = cross_ratio(ex, ey, b, a);
        return detail::safe_ratio(1.0, m(cr1, cr2));
    };
    return boundary_pair_sup(G, x, y, obj);
}

/// Weight of the one-parameter cross-ratio family: max{1, 2^{-1/p}} A_p.
/// IEEE conventions give the right scale factor for every extended p.
inline WeightFunction seittenranta_weight(double p) {
    double factor = std::max(1.0, std::exp2(-1.0 / p));
    return WeightFunction([factor, p](double u, double v) { return factor * power_mean(p, u, v); },
                          "cross-ratio-mean", 1.0);
}

/// delta_G^p(x,y) = log(1 + rho'_{M,G}(x,y)); p = -infinity is Seittenranta's
/// metric, which equals the hyperbolic metric on the unit ball.
inline double seittenranta(double p, const DomainSpec& G, const Vec& x, const Vec& y) {
    return std::log1p(rho_prime(seittenranta_weight(p), G, x, y));
}

/// rho_G(x,y) = arch(1 + sup over boundary pairs of |a,x,b,y| |a,y,b,x| / 2).
inline double rho_g(const DomainSpec& G, const Vec& x, const Vec& y) {
    ExtendedPoint ex = ExtendedPoint::at(x), ey = ExtendedPoint::at(y);
    double qxy = chordal(ex, ey);
    auto S = [&](const ExtendedPoint& a, const ExtendedPoint& b) {
        double qab = chordal(a, b);
        double num = qab * qab * qxy * qxy;
        double den = chordal(a, ex) * chordal(b, ey) * chordal(a, ey) * chordal(b, ex);
        return detail::safe_ratio(num, den);
    };
    return arch1p(0.5 * boundary_pair_sup(G, x, y, S));
}

/// Closed form of rho_G on the punctured space (boundary {0, infinity}):
/// arch(1 + |x-y|^2 / (2 |x| |y|)).
inline double rho_g_punctured(const Vec& x, const Vec& y) {
    double nx = norm(x), ny = norm(y);
    if (nx == 0.0 || ny == 0.0) throw std::domain_error("rho_g_punctured: zero point");
    double d = dist(x, y);
    return arch1p(d * d / (2.0 * nx * ny));
}

/// Speculative family arch(1 + rho'_{A_0,G}(x,y)^p / p).  Experimental
/// evaluator only: no metric property is claimed for p != 2.
inline double rho_g_power(double p, const DomainSpec& G, const Vec& x, const Vec& y) {
    if (!(p > 0.0)) throw std::domain_error("rho_g_power: p must be positive");
    double rp = rho_prime(power_mean_weight(0.0, 1.0), G, x, y);
    return arch1p(std::pow(rp, p) / p);
}

struct RhoGPropertiesReport {
    double mobius_drift = 0.0;       // max relative drift pushing points and boundary
    double monotonicity_slack = 0.0; // max of rho(bigger boundary deficit); <= 0 when monotone
    double cosh_bound_slack = 0.0;   // min of rho_G - (cosh((q(dG) q(x,y))^2) - 1)
    double ball_deviation = 0.0;     // max |rho_G - hyperbolic| on the unit ball
    double half_space_deviation = 0.0;
    bool mobius_ok = false;
    bool monotone_ok = false;
    bool cosh_bound_ok = false;
    bool hyperbolic_ok = false;
};

/// Sampled verification of the structural properties of rho_G: Mobius
/// invariance, domain monotonicity, the cosh lower bound (implemented exactly
/// as stated), and agreement with the hyperbolic metric on the unit ball and
/// the upper half-space.
inline RhoGPropertiesReport rho_g_properties_test(std::size_t n_samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RhoGPropertiesReport rep;
    auto rand_pt = [&](std::size_t dim) {
        Vec v(dim);
        for (double& c : v) c = unif(rng);
        return v;
    };

    // (i) push points and a finite boundary through a random Mobius map
    for (std::size_t k = 0; k < n_samples; ++k) {
        std::vector<ExtendedPoint> bnd;
        std::size_t nb = 2 + k % 3;
        for (std::size_t i = 0; i < nb; ++i) bnd.push_back(ExtendedPoint::at(rand_pt(3)));
        if (k % 4 == 0) bnd.push_back(ExtendedPoint::infinity());
        DomainSpec G = DomainSpec::finite(bnd);
        Vec x = rand_pt(3), y = rand_pt(3);
        MobiusMap g = MobiusMap::inversion(rand_pt(3), 0.5 + unit(rng))
                          .then(MobiusMap::translation(rand_pt(3)))
                          .then(MobiusMap::dilation(0.5 + unit(rng)));
        std::vector<ExtendedPoint> mapped;
        for (const ExtendedPoint& b : bnd) mapped.push_back(g(b));
        ExtendedPoint gx = g(ExtendedPoint::at(x)), gy = g(ExtendedPoint::at(y));
        if (gx.infinite || gy.infinite) continue;
        double before = rho_g(G, x, y);
        double after = rho_g(DomainSpec::finite(mapped), gx.coords, gy.coords);
        if (before > 1e-12)
            rep.mobius_drift = std::max(rep.mobius_drift, std::abs(after - before) / before);
    }
    rep.mobius_ok = rep.mobius_drift <= 1e-9;

    // (ii) enlarging the boundary point set shrinks the domain and grows rho_G
    rep.monotonicity_slack = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n_samples; ++k) {
        std::vector<ExtendedPoint> small;
        for (int i = 0; i < 3; ++i) small.push_back(ExtendedPoint::at(rand_pt(3)));
        std::vector<ExtendedPoint> big = small;
        for (int i = 0; i < 3; ++i) big.push_back(ExtendedPoint::at(rand_pt(3)));
        Vec x = rand_pt(3), y = rand_pt(3);
        double d_small = rho_g(DomainSpec::finite(small), x, y);
        double d_big = rho_g(DomainSpec::finite(big), x, y);
        rep.monotonicity_slack = std::max(rep.monotonicity_slack, d_small - d_big);
    }
    rep.monotone_ok = rep.monotonicity_slack <= 1e-12;

    // (iii) the stated lower bound, verbatim cosh form
    rep.cosh_bound_slack = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n_samples; ++k) {
        std::vector<ExtendedPoint> bnd;
        for (int i = 0; i < 4; ++i) bnd.push_back(ExtendedPoint::at(rand_pt(3)));
        DomainSpec G = DomainSpec::finite(bnd);
        Vec x = rand_pt(3), y = rand_pt(3);
        double qd = chordal_boundary_diameter(G);
        double qq = qd * chordal(ExtendedPoint::at(x), ExtendedPoint::at(y));
        double bound = std::cosh(qq * qq) - 1.0;
        rep.cosh_bound_slack = std::min(rep.cosh_bound_slack, rho_g(G, x, y) - bound);
    }
    rep.cosh_bound_ok = rep.cosh_bound_slack >= -1e-12;

    // (iv) hyperbolic agreement on the unit ball and the upper half-space
    DomainSpec ball = DomainSpec::sphere(Vec(3, 0.0), 1.0);
    Vec e3(3, 0.0);
    e3[2] = 1.0;
    DomainSpec half = DomainSpec::half_space(Vec(3, 0.0), e3);
    std::size_t pairs = std::min<std::size_t>(n_samples, 100);
    for (std::size_t k = 0; k < pairs; ++k) {
        Vec x = scaled(sphere_dir(rng, 3), 0.85 * std::pow(unit(rng), 1.0 / 3.0));
        Vec y = scaled(sphere_dir(rng, 3), 0.85 * std::pow(unit(rng), 1.0 / 3.0));
        rep.ball_deviation =
            std::max(rep.ball_deviation, std::abs(rho_g(ball, x, y) - hyperbolic_ball(x, y)));
        Vec u = rand_pt(3), v = rand_pt(3);
        u[2] = 0.2 + unit(rng);
        v[2] = 0.2 + unit(rng);
        rep.half_space_deviation = std::max(
            rep.half_space_deviation, std::abs(rho_g(half, u, v) - hyperbolic_half_space(u, v)));
    }
    rep.hyperbolic_ok = rep.ball_deviation <= 1e-4 && rep.half_space_deviation <= 1e-4;
    return rep;
}

}  // namespace relmet
