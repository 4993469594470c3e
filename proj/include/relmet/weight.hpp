#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "relmet/means.hpp"

namespace relmet {

/// Symmetric nonnegative weight M(x,y) on [0,inf)^2, the denominator of the
/// relative distance.  Symmetry (and homogeneity, when declared) is checked
/// by sampling at construction; metadata is advisory and used by the
/// criteria that require it.
class WeightFunction {
  public:
    WeightFunction() = default;

    WeightFunction(std::function<double(double, double)> f, std::string label,
                   std::optional<double> homogeneity = std::nullopt,
                   std::optional<double> quasimean_exponent = std::nullopt)
        : f_(std::move(f)),
          label_(std::move(label)),
          homogeneity_(homogeneity),
          quasimean_exponent_(quasimean_exponent) {
        validate();
    }

    double operator()(double x, double y) const { return f_(x, y); }

    const std::string& label() const { return label_; }
    std::optional<double> homogeneity_degree() const { return homogeneity_; }
    std::optional<double> quasimean_exponent() const { return quasimean_exponent_; }

  private:
    void validate() const {
        static const double xs[] = {1e-3, 0.1, 0.7, 1.0, 3.0, 42.0, 1e3};
        for (double x : xs)
            for (double y : xs) {
                double a = f_(x, y), b = f_(y, x);
                if (std::isnan(a)) throw std::invalid_argument("weight: NaN at (" + std::to_string(x) + "," + std::to_string(y) + ")");
                double s = std::max(std::abs(a), std::abs(b));
                if (std::abs(a - b) > 1e-10 * (s > 0 ? s : 1.0))
                    throw std::invalid_argument("weight '" + label_ + "' is not symmetric");
                if (homogeneity_) {
                    for (double t : {0.25, 3.0}) {
                        double lhs = f_(t * x, t * y);
                        double rhs = std::pow(t, *homogeneity_) * a;
                        double hs = std::max(std::abs(lhs), std::abs(rhs));
                        if (std::abs(lhs - rhs) > 1e-10 * (hs > 0 ? hs : 1.0))
                            throw std::invalid_argument("weight '" + label_ +
                                                        "' violates declared homogeneity");
                    }
                }
            }
    }

    std::function<double(double, double)> f_;
    std::string label_;
    std::optional<double> homogeneity_;
    std::optional<double> quasimean_exponent_;
};

/// Trace of a weight along the section y = 1.
inline double trace(const WeightFunction& m, double x) { return m(x, 1.0); }

inline WeightFunction constant_weight(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("constant_weight: need c > 0");
    return WeightFunction([c](double, double) { return c; }, "const", 0.0);
}

/// M(x,y) = (x^p + y^p)^{q/p}; p = +inf (or any p > 1e6, to dodge overflow)
/// collapses to the max branch max{x,y}^q.
inline WeightFunction pq_weight(double p, double q) {
    if (!(p > 0.0)) throw std::invalid_argument("pq_weight: need p > 0");
    if (q < 0.0) throw std::invalid_argument("pq_weight: need q >= 0");
    std::function<double(double, double)> f;
    if (p > 1e6) {
        f = [q](double x, double y) { return std::pow(std::max(x, y), q); };
    } else {
        f = [p, q](double x, double y) {
            if (q == 0.0) return 1.0;
            double m = std::max(x, y);
            if (m == 0.0) return 0.0;
            if (std::isinf(m)) return inf;
            double t = std::min(x, y) / m;
            return std::pow(m, q) * std::pow(1.0 + std::pow(t, p), q / p);
        };
    }
    bool is_max = p > 1e6;
    return WeightFunction(std::move(f), "pq", q,
                          is_max && q > 0.0 && q <= 1.0 ? std::optional<double>(q) : std::nullopt);
}

/// Normalized power-mean weight A_p(x,y)^alpha, an alpha-quasimean.
inline WeightFunction power_mean_weight(double p, double alpha) {
    return WeightFunction(
        [p, alpha](double x, double y) { return std::pow(power_mean(p, x, y), alpha); },
        "A_p^a", alpha, alpha > 0.0 && alpha <= 1.0 ? std::optional<double>(alpha) : std::nullopt);
}

/// Product weight M(x,y) = f(x) f(y).
inline WeightFunction product_weight(std::function<double(double)> f, std::string label = "f.f") {
    return WeightFunction(
        [g = std::move(f)](double x, double y) { return g(x) * g(y); }, std::move(label));
}

/// Weight of the chordal (spherical) metric, sqrt(1+x^2) sqrt(1+y^2).
inline WeightFunction spherical_weight() {
    return WeightFunction(
        [](double x, double y) { return std::sqrt((1.0 + x * x)) * std::sqrt(1.0 + y * y); },
        "spherical");
}

}  // namespace relmet
