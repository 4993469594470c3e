#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace relmet {

inline constexpr double inf = std::numeric_limits<double>::infinity();

/// Power mean A_p(x,y) = ((x^p + y^p)/2)^{1/p} on [0,inf)^2, with the
/// classical special cases as explicit branches: A_{-inf} = min,
/// A_0 = sqrt(xy), A_{+inf} = max.  For p < 0 and a zero argument the
/// limit convention A_p(0,y) = 0 applies.
inline double power_mean(double p, double x, double y) {
    if (x < 0.0 || y < 0.0) throw std::domain_error("power_mean: negative argument");
    if (p == inf) return std::max(x, y);
    if (p == -inf) return std::min(x, y);
    if (p == 0.0) return std::sqrt(x * y);
    if (x == y) return x;
    if (p > 0.0) {
        double m = std::max(x, y);
        if (m == 0.0) return 0.0;
        if (std::isinf(m)) return inf;
        double t = std::min(x, y) / m;  // in [0,1)
        return m * std::pow((1.0 + std::pow(t, p)) / 2.0, 1.0 / p);
    }
    // p < 0: factor out the smaller argument so all powers stay bounded
    double n = std::min(x, y);
    if (n == 0.0) return 0.0;
    double t = std::max(x, y) / n;  // in (1, inf]
    double tp = std::pow(t, p);     // in [0, 1)
    return n * std::pow((1.0 + tp) / 2.0, 1.0 / p);
}

/// The quasimean family S_p, 0 < p <= 1:
///   S_p(x,y) = (1-p)(x-y)/(x^{1-p} - y^{1-p})   (x != y, p < 1)
///   S_p(x,x) = x^p,   S_1 = L, the logarithmic mean.
/// Near the diagonal the quotient cancels catastrophically, so within
/// |x-y| < 1e-8*max the evaluation switches to the limit value through the
/// midpoint, which agrees with the exact value to O((x-y)^2/x^2).
inline double s_quasimean(double p, double x, double y) {
    if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("s_quasimean: p outside (0,1]");
    if (x < 0.0 || y < 0.0) throw std::domain_error("s_quasimean: negative argument");
    double m = std::max(x, y);
    if (m == 0.0) return 0.0;
    if (std::isinf(m)) return inf;
    if (std::abs(x - y) < 1e-8 * m) return p == 1.0 ? 0.5 * (x + y) : std::pow(0.5 * (x + y), p);
    if (p == 1.0) {
        if (x == 0.0 || y == 0.0) return 0.0;  // (x-0)/(log x - log 0) -> 0
        return (x - y) / std::log(x / y);
    }
    return (1.0 - p) * (x - y) / (std::pow(x, 1.0 - p) - std::pow(y, 1.0 - p));
}

/// Logarithmic mean L(x,y) = (x-y)/(log x - log y), L(x,x) = x.
inline double log_mean(double x, double y) { return s_quasimean(1.0, x, y); }

/// Sample grids for the structural predicates.  Those conditions quantify
/// over all positive reals; grids are the desk-scale proxy.
inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0 && hi > lo) || n < 2) throw std::invalid_argument("log_grid: bad range");
    std::vector<double> g(n);
    double l0 = std::log(lo), l1 = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = std::exp(l0 + (l1 - l0) * static_cast<double>(i) / static_cast<double>(n - 1));
    return g;
}

inline std::vector<double> default_predicate_grid() { return log_grid(1e-6, 1e6, 512); }

struct GridWitness {
    double x0 = 0, x1 = 0;  // offending abscissae
    double v0 = 0, v1 = 0;  // corresponding values
    double fixed = 0;       // frozen second coordinate, when applicable
};

/// f nondecreasing and f(t)/t nonincreasing along a positive grid.
template <class F>
std::optional<GridWitness> moderate_violation_1d(F&& f, const std::vector<double>& grid,
                                                 double fixed = 0.0, double rtol = 1e-12) {
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double t0 = grid[i], t1 = grid[i + 1];
        double v0 = f(t0), v1 = f(t1);
        double s = std::max(std::abs(v0), std::abs(v1));
        if (v1 < v0 - rtol * s) return GridWitness{t0, t1, v0, v1, fixed};
        double r0 = v0 / t0, r1 = v1 / t1;
        double rs = std::max(std::abs(r0), std::abs(r1));
        if (r1 > r0 + rtol * rs) return GridWitness{t0, t1, r0, r1, fixed};
    }
    return std::nullopt;
}

/// Moderately increasing check for a symmetric two-variable weight: each
/// section t -> M(t, y) must be nondecreasing with M(t,y)/t nonincreasing.
/// A coarse set of section levels keeps the cost at grid^2-ish.
template <class M>
std::optional<GridWitness> moderately_increasing_witness(M&& m, const std::vector<double>& grid) {
    if (grid.size() < 2) throw std::invalid_argument("moderately_increasing: degenerate grid");
    std::size_t stride = std::max<std::size_t>(1, grid.size() / 16);
    for (std::size_t j = 0; j < grid.size(); j += stride) {
        double y = grid[j];
        auto section = [&](double t) { return m(t, y); };
        if (auto w = moderate_violation_1d(section, grid, y)) return w;
    }
    return std::nullopt;
}

template <class M>
bool is_moderately_increasing(M&& m, const std::vector<double>& grid) {
    return !moderately_increasing_witness(m, grid).has_value();
}

/// alpha-quasimean envelope: min{x^a, y^a} <= M(x,y) <= max{x^a, y^a} on the grid.
template <class M>
std::optional<GridWitness> quasimean_exponent_witness(M&& m, double alpha,
                                                      const std::vector<double>& grid,
                                                      double rtol = 1e-12) {
    for (double x : grid)
        for (double y : grid) {
            double lo = std::pow(std::min(x, y), alpha);
            double hi = std::pow(std::max(x, y), alpha);
            double v = m(x, y);
            double s = std::max(hi, std::abs(v));
            if (v < lo - rtol * s || v > hi + rtol * s) return GridWitness{x, y, v, lo, hi};
        }
    return std::nullopt;
}

template <class M>
bool quasimean_exponent_check(M&& m, double alpha, const std::vector<double>& grid) {
    return !quasimean_exponent_witness(m, alpha, grid).has_value();
}

}  // namespace relmet
