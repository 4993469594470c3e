#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

namespace relmet {

namespace detail {

template <class F>
double simpson_rec(F& f, double a, double fa, double b, double fb, double m, double fm,
                   double whole, double rel_tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double h = b - a;
    double left = h / 12.0 * (fa + 4.0 * flm + fm);
    double right = h / 12.0 * (fm + 4.0 * frm + fb);
    double sum = left + right;
    double err = sum - whole;
    if (depth <= 0 || std::abs(err) <= 15.0 * rel_tol * std::abs(sum))
        return sum + err / 15.0;
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, rel_tol, depth - 1) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, rel_tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a,b] with a relative error target
/// and a recursion cap that bounds work on adversarial integrands.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double rel_tol = 1e-10, int max_depth = 40) {
    if (a == b) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fb = f(b), fm = f(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, fa, b, fb, m, fm, whole, rel_tol, max_depth);
}

/// Golden-section maximum of a unimodal f on [a,b]; returns (argmax, max).
/// On non-unimodal input it still converges to some local maximum inside.
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double x_tol = 1e-10,
                                     std::size_t max_iter = 200) {
    const double invphi = 0.6180339887498949;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (std::size_t i = 0; i < max_iter && (b - a) > x_tol; ++i) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    double xm = 0.5 * (a + b), fm = f(xm);
    if (fc > fm && fc > fd) return {c, fc};
    if (fd > fm) return {d, fd};
    return {xm, fm};
}

/// Bisection for f(s) = 0 given a sign-changing bracket f(lo) <= 0 <= f(hi).
/// Runs to a relative interval width, which for doubles means convergence to
/// the last bits after ~60 iterations.
template <class F>
double bisect_root(F&& f, double lo, double hi, double rel_tol = 1e-13,
                   std::size_t max_iter = 200) {
    for (std::size_t i = 0; i < max_iter; ++i) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi))) return mid;
        double v = f(mid);
        if (v == 0.0) return mid;
        if (v < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// arch(1+v) = log(1 + v + sqrt(v(v+2))) evaluated without the cancellation
/// that std::acosh(1+v) suffers for small v.
inline double arch1p(double v) {
    if (v < 0.0) {
        if (v > -1e-12) return 0.0;
        throw std::domain_error("arch1p: negative argument");
    }
    return std::log1p(v + std::sqrt(v * (v + 2.0)));
}

}  // namespace relmet
