#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "relmet/fuzz.hpp"
#include "relmet/means.hpp"
#include "relmet/vec.hpp"
#include "relmet/weight.hpp"

namespace relmet {

namespace detail {

/// num/den with the 0/0 = 0 convention; a positive numerator over a zero
/// denominator is a genuine +inf distance value.
inline double safe_ratio(double num, double den) {
    if (num == 0.0) return 0.0;
    if (den == 0.0) return inf;
    return num / den;
}

}  // namespace detail

/// The M-relative distance ||x-y|| / M(||x||, ||y||).
inline double rho(const WeightFunction& m, const Vec& x, const Vec& y) {
    return detail::safe_ratio(dist(x, y), m(norm(x), norm(y)));
}

/// Same on the signed real line, where metricity of the family is decided.
inline double rho_line(const WeightFunction& m, double x, double y) {
    return detail::safe_ratio(std::abs(x - y), m(std::abs(x), std::abs(y)));
}

/// (p,q)-relative distance with M(x,y) = (x^p + y^p)^{q/p}; the p = inf
/// branch (also taken for p > 1e6) uses max{x,y}^q.
inline double rho_pq(double p, double q, const Vec& x, const Vec& y) {
    double nx = norm(x), ny = norm(y);
    double num = dist(x, y);
    if (q == 0.0) return num;
    double den;
    if (p > 1e6 || p == inf) {
        den = std::pow(std::max(nx, ny), q);
    } else {
        double m = std::max(nx, ny);
        if (m == 0.0) return detail::safe_ratio(num, 0.0);
        den = std::pow(m, q) * std::pow(1.0 + std::pow(std::min(nx, ny) / m, p), q / p);
    }
    return detail::safe_ratio(num, den);
}

/// Exact metricity region of the (p,q)-relative distance:
/// q = 0, or 0 < q <= 1 with p >= max{1-q, (2-q)/3}.
inline bool pq_is_metric(double p, double q) {
    if (q == 0.0) return true;
    if (q < 0.0 || q > 1.0) return false;
    return p >= std::max(1.0 - q, (2.0 - q) / 3.0);
}

enum class MetricCriterion { SufficientHolds, NecessaryFails, Inconclusive };

struct CriterionReport {
    MetricCriterion verdict = MetricCriterion::Inconclusive;
    std::optional<GridWitness> witness;
};

/// Metricity criterion for an alpha-quasimean weight via its trace:
/// sufficient when M(x,1)/S_alpha(x,1) is nondecreasing on [1,inf);
/// necessary that M(x,1) >= S_alpha(x,1) there.  Grid-sampled.
inline CriterionReport metric_criterion_quasimean(const WeightFunction& m, double alpha,
                                                  const std::vector<double>& grid) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::domain_error("metric_criterion_quasimean: alpha outside (0,1]");
    CriterionReport rep;
    std::vector<double> xs;
    for (double x : grid)
        if (x >= 1.0) xs.push_back(x);
    if (xs.size() < 2) throw std::invalid_argument("metric_criterion_quasimean: grid needs >= 2 points in [1,inf)");
    std::sort(xs.begin(), xs.end());

    for (double x : xs) {
        double mv = trace(m, x), sv = s_quasimean(alpha, x, 1.0);
        if (mv < sv * (1.0 - 1e-12)) {
            rep.verdict = MetricCriterion::NecessaryFails;
            rep.witness = GridWitness{x, x, mv, sv, alpha};
            return rep;
        }
    }
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        double r0 = trace(m, xs[i]) / s_quasimean(alpha, xs[i], 1.0);
        double r1 = trace(m, xs[i + 1]) / s_quasimean(alpha, xs[i + 1], 1.0);
        if (r1 < r0 * (1.0 - 1e-12)) {
            rep.verdict = MetricCriterion::Inconclusive;
            rep.witness = GridWitness{xs[i], xs[i + 1], r0, r1, alpha};
            return rep;
        }
    }
    rep.verdict = MetricCriterion::SufficientHolds;
    return rep;
}

/// Triangle fuzz for rho_M on the signed line.  The campaign opens with a
/// deterministic sweep over sign-mixed log-grid triples (violations for the
/// (p,q) family concentrate at extreme magnitude ratios, so the sweep finds
/// them reproducibly) and then runs the seeded random phase with
/// log-uniform magnitudes in [1e-3, 1e3].
inline FuzzReport metric_on_line_fuzz(const WeightFunction& m, std::size_t n_samples,
                                      std::uint64_t seed) {
    auto d = [&m](const Vec& a, const Vec& b) { return rho_line(m, a[0], b[0]); };

    std::vector<double> pattern;
    for (double mag : log_grid(1e-3, 1e3, 9)) {
        pattern.push_back(mag);
        pattern.push_back(-mag);
    }
    std::size_t np = pattern.size();
    std::size_t grid_total = np * np * np;
    std::size_t idx = 0;

    auto sampler = [&](std::mt19937_64& rng) -> Triple {
        if (idx < grid_total) {
            std::size_t i = idx++;
            return Triple{Vec{pattern[i % np]}, Vec{pattern[(i / np) % np]},
                          Vec{pattern[(i / np / np) % np]}};
        }
        auto draw = [&rng]() {
            double v = log_uniform(rng, 1e-3, 1e3);
            return (rng() & 1u) ? v : -v;
        };
        return Triple{Vec{draw()}, Vec{draw()}, Vec{draw()}};
    };
    return triangle_fuzz(d, sampler, std::max(n_samples, grid_total), seed);
}

/// Triangle fuzz for rho_M over R^n with the documented sampling
/// distribution (log-uniform magnitudes, uniform directions).
inline FuzzReport metric_fuzz_rn(const WeightFunction& m, std::size_t dim,
                                 std::size_t n_samples, std::uint64_t seed) {
    auto d = [&m](const Vec& a, const Vec& b) { return rho(m, a, b); };
    auto sampler = [dim](std::mt19937_64& rng) -> Triple {
        auto draw = [&rng, dim]() {
            return scaled(sphere_dir(rng, dim), log_uniform(rng, 1e-3, 1e3));
        };
        return Triple{draw(), draw(), draw()};
    };
    return triangle_fuzz(d, sampler, n_samples, seed);
}

inline FuzzReport pq_fuzz_rn(double p, double q, std::size_t dim, std::size_t n_samples,
                             std::uint64_t seed) {
    auto d = [p, q](const Vec& a, const Vec& b) { return rho_pq(p, q, a, b); };
    auto sampler = [dim](std::mt19937_64& rng) -> Triple {
        auto draw = [&rng, dim]() {
            return scaled(sphere_dir(rng, dim), log_uniform(rng, 1e-3, 1e3));
        };
        return Triple{draw(), draw(), draw()};
    };
    return triangle_fuzz(d, sampler, n_samples, seed);
}

/// Ptolemy defect max(0, ||z-w||*||x-y|| - ||y-w||*||x-z|| - ||x-w||*||z-y||);
/// zero everywhere in an inner-product space.
inline double ptolemy_check(const Vec& x, const Vec& y, const Vec& z, const Vec& w) {
    double v = dist(z, w) * dist(x, y) - dist(y, w) * dist(x, z) - dist(x, w) * dist(z, y);
    return v > 0.0 ? v : 0.0;
}

struct FFCheckReport {
    bool ok = false;
    std::optional<GridWitness> witness;
    std::string reason;  // "not-nondecreasing" | "ratio-increasing" | "not-convex"
};

/// Finite-metric criterion for product weights M = f(x)f(y): f nondecreasing,
/// f(t)/t nonincreasing, and midpoint-convex between grid neighbours.
inline FFCheckReport ff_finite_metric_check(const std::function<double(double)>& f,
                                            const std::vector<double>& grid) {
    FFCheckReport rep;
    std::vector<double> g(grid);
    std::sort(g.begin(), g.end());
    const double rtol = 1e-12;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        double v0 = f(g[i]), v1 = f(g[i + 1]);
        double s = std::max(std::abs(v0), std::abs(v1));
        if (v1 < v0 - rtol * s) {
            rep.witness = GridWitness{g[i], g[i + 1], v0, v1, 0};
            rep.reason = "not-nondecreasing";
            return rep;
        }
        if (g[i] > 0.0) {
            double r0 = v0 / g[i], r1 = v1 / g[i + 1];
            if (r1 > r0 + rtol * std::max(std::abs(r0), std::abs(r1))) {
                rep.witness = GridWitness{g[i], g[i + 1], r0, r1, 0};
                rep.reason = "ratio-increasing";
                return rep;
            }
        }
        double mid = 0.5 * (g[i] + g[i + 1]);
        double fm = f(mid), chord = 0.5 * (v0 + v1);
        if (fm > chord + 1e-10 * std::max(1.0, std::abs(chord))) {
            rep.witness = GridWitness{g[i], g[i + 1], fm, chord, mid};
            rep.reason = "not-convex";
            return rep;
        }
    }
    // secant slopes must be nondecreasing across the grid as well; the
    // midpoint test alone can miss concavity spanning several cells
    for (std::size_t i = 0; i + 2 < g.size(); ++i) {
        double s01 = (f(g[i + 1]) - f(g[i])) / (g[i + 1] - g[i]);
        double s12 = (f(g[i + 2]) - f(g[i + 1])) / (g[i + 2] - g[i + 1]);
        if (s12 < s01 - 1e-10 * std::max(1.0, std::abs(s01))) {
            rep.witness = GridWitness{g[i], g[i + 2], s01, s12, g[i + 1]};
            rep.reason = "not-convex";
            return rep;
        }
    }
    rep.ok = true;
    return rep;
}

/// Which distance a bilipschitz experiment runs under.
struct MetricDescriptor {
    enum class Kind { Euclidean, PQRelative, ProductF, Spherical, CustomWeight };

    Kind kind = Kind::Euclidean;
    std::size_t dimension = 3;
    double p = 1.0, q = 0.0;
    std::function<double(double)> f;
    std::optional<WeightFunction> weight;

    static MetricDescriptor euclidean(std::size_t dim) {
        MetricDescriptor d;
        d.dimension = dim;
        return d;
    }

    static MetricDescriptor pq_relative(double p, double q, std::size_t dim) {
        if (!(p > 0.0) || q < 0.0) throw std::invalid_argument("pq_relative: need p > 0, q >= 0");
        MetricDescriptor d;
        d.kind = Kind::PQRelative;
        d.dimension = dim;
        d.p = p;
        d.q = q;
        return d;
    }

    static MetricDescriptor product_f(std::function<double(double)> f, std::size_t dim) {
        if (!f) throw std::invalid_argument("product_f: empty function");
        MetricDescriptor d;
        d.kind = Kind::ProductF;
        d.dimension = dim;
        d.f = std::move(f);
        return d;
    }

    static MetricDescriptor spherical(std::size_t dim) {
        MetricDescriptor d;
        d.kind = Kind::Spherical;
        d.dimension = dim;
        return d;
    }

    static MetricDescriptor custom(WeightFunction w, std::size_t dim) {
        MetricDescriptor d;
        d.kind = Kind::CustomWeight;
        d.dimension = dim;
        d.weight = std::move(w);
        return d;
    }

    double operator()(const Vec& x, const Vec& y) const {
        switch (kind) {
            case Kind::Euclidean: return dist(x, y);
            case Kind::PQRelative: return rho_pq(p, q, x, y);
            case Kind::ProductF:
                return detail::safe_ratio(dist(x, y), f(norm(x)) * f(norm(y)));
            case Kind::Spherical: {
                double nx2 = dot(x, x), ny2 = dot(y, y);
                return dist(x, y) / (std::sqrt(1.0 + nx2) * std::sqrt(1.0 + ny2));
            }
            case Kind::CustomWeight: return rho(*weight, x, y);
        }
        return 0.0;
    }
};

/// Sampled inner bounds on the bilipschitz constants of g under distance d:
/// the returned (lower, upper) are the extreme observed ratios
/// d(g(x),g(y))/d(x,y), so the true constants satisfy L_lower <= lower and
/// L_upper >= upper.  Pairs at distance 0 are skipped.  Assumes g(0) = 0
/// where the distance needs it (caller's responsibility).
inline std::pair<double, double> bilipschitz_estimate(
    const std::function<Vec(const Vec&)>& g, const MetricDescriptor& d, std::size_t n_samples,
    std::uint64_t seed) {
    if (n_samples < 2) throw std::invalid_argument("bilipschitz_estimate: need >= 2 samples");
    std::mt19937_64 rng(seed);
    double lo = inf, hi = -inf;
    std::size_t kept = 0;
    while (kept < n_samples) {
        Vec x = scaled(sphere_dir(rng, d.dimension), log_uniform(rng, 1e-3, 1e3));
        Vec y = scaled(sphere_dir(rng, d.dimension), log_uniform(rng, 1e-3, 1e3));
        double den = d(x, y);
        if (!(den > 0.0) || std::isinf(den)) continue;
        double num = d(g(x), g(y));
        double r = num / den;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        ++kept;
    }
    return {lo, hi};
}

}  // namespace relmet
