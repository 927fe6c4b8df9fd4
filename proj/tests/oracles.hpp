#pragma once

// Reference computations written independently of the library: direct power-form
// evaluation of the rational pieces, closed-form classical and Hermite
// interpolants, a brute-force cubic minimizer and random data generators.

#include "rcsfif/constraint.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

namespace oracle {

struct Hermite {
    std::vector<double> x, y, d;
};

inline Hermite positive_data() {
    return {{0.0, 0.4, 0.75, 1.0}, {0.1, 1.0, 2.0, 5.0}, {-1.5238, 1.5238, 8.1905, 15.8095}};
}

inline Hermite line_data() {
    return {{1.0, 3.3, 4.6, 7.2}, {-1.2, -1.1, -1.0, 4.5}, {0.85, -0.15, -0.4583, -0.7861}};
}

inline rcsfif::DataSet to_data(const Hermite& h) {
    return rcsfif::DataSet::from_columns(h.x, h.y, h.d);
}

struct Piece {
    double U, V, W, Z;
};

/// Numerator coefficients of q_i written out term by term.
inline Piece coefficients(const Hermite& h, std::size_t i, double al, double u, double v) {
    const std::size_t n = h.x.size() - 1;
    const double L = h.x[n] - h.x[0];
    const double hi = h.x[i + 1] - h.x[i];
    Piece p;
    p.U = u * (h.y[i] - al * h.y[0]);
    p.Z = u * (h.y[i + 1] - al * h.y[n]);
    p.V = (3 * u + v) * (h.y[i] - al * h.y[0]) + u * hi * h.d[i] - al * u * L * h.d[0];
    p.W = (3 * u + v) * (h.y[i + 1] - al * h.y[n]) - u * hi * h.d[i + 1] + al * u * L * h.d[n];
    return p;
}

/// q_i at global parameter t in [0, 1], evaluated in power form.
inline double q(const Hermite& h, std::size_t i, double al, double u, double v, double t) {
    const Piece p = coefficients(h, i, al, u, v);
    const double s = 1 - t;
    const double num = p.U * s * s * s + p.V * s * s * t + p.W * s * t * t + p.Z * t * t * t;
    return num / (u + v * t * s);
}

/// dq_i/dt by the quotient rule on the power form.
inline double dq_dt(const Hermite& h, std::size_t i, double al, double u, double v, double t) {
    const Piece p = coefficients(h, i, al, u, v);
    const double s = 1 - t;
    const double num = p.U * s * s * s + p.V * s * s * t + p.W * s * t * t + p.Z * t * t * t;
    const double dnum = -3 * p.U * s * s + p.V * (s * s - 2 * s * t) + p.W * (2 * s * t - t * t) +
                        3 * p.Z * t * t;
    const double den = u + v * t * s;
    const double dden = v * (1 - 2 * t);
    return (dnum * den - num * dden) / (den * den);
}

/// Same q_i written in the interval-tension form: linear part plus a bubble
/// term scaled by u h / Q.
inline double q_tension_form(const Hermite& h, std::size_t i, double al, double u, double v,
                             double t) {
    const std::size_t n = h.x.size() - 1;
    const double L = h.x[n] - h.x[0];
    const double hi = h.x[i + 1] - h.x[i];
    const double a = hi / L;
    const double delta = (h.y[i + 1] - h.y[i]) / hi - al * (h.y[n] - h.y[0]) / hi;
    const double di = h.d[i] - al * h.d[0] / a;
    const double di1 = h.d[i + 1] - al * h.d[n] / a;
    const double lin = (h.y[i] - al * h.y[0]) * (1 - t) + (h.y[i + 1] - al * h.y[n]) * t;
    const double bubble =
        u * hi * t * (1 - t) * ((2 * t - 1) * delta + (1 - t) * di - t * di1) / (u + v * t * (1 - t));
    return lin + bubble;
}

/// Classical rational cubic on the interval containing x (local variable).
inline double classical(const Hermite& h, const std::vector<double>& u,
                        const std::vector<double>& v, double x) {
    std::size_t i = 0;
    while (i + 2 < h.x.size() && x >= h.x[i + 1]) ++i;
    const double hi = h.x[i + 1] - h.x[i];
    const double t = (x - h.x[i]) / hi;
    const double s = 1 - t;
    const double num = u[i] * h.y[i] * s * s * s +
                       ((3 * u[i] + v[i]) * h.y[i] + u[i] * hi * h.d[i]) * s * s * t +
                       ((3 * u[i] + v[i]) * h.y[i + 1] - u[i] * hi * h.d[i + 1]) * s * t * t +
                       u[i] * h.y[i + 1] * t * t * t;
    return num / (u[i] + v[i] * t * s);
}

/// Cubic Hermite interpolant in its textbook basis-function form.
inline double hermite_cubic(const Hermite& h, double x) {
    std::size_t i = 0;
    while (i + 2 < h.x.size() && x >= h.x[i + 1]) ++i;
    const double hi = h.x[i + 1] - h.x[i];
    const double t = (x - h.x[i]) / hi;
    return (2 * t * t * t - 3 * t * t + 1) * h.y[i] + (t * t * t - 2 * t * t + t) * hi * h.d[i] +
           (-2 * t * t * t + 3 * t * t) * h.y[i + 1] + (t * t * t - t * t) * hi * h.d[i + 1];
}

/// Minimum over [0, inf) of a3 s^3 + a2 s^2 + a1 s + a0, normalized by the largest
/// coefficient magnitude and mapped to t = s / (1 + s) in [0, 1]. Dense grid
/// followed by golden-section refinement around every grid-local minimum.
inline double cubic_min_on_halfline(double a3, double a2, double a1, double a0) {
    const double scale = std::max({std::abs(a3), std::abs(a2), std::abs(a1), std::abs(a0)});
    if (scale == 0.0) return 0.0;
    const double b0 = a0 / scale, b1 = a1 / scale, b2 = a2 / scale, b3 = a3 / scale;
    const auto f = [&](double t) {
        const double s = 1 - t;
        return b0 * s * s * s + b1 * s * s * t + b2 * s * t * t + b3 * t * t * t;
    };
    constexpr int grid = 4000;
    std::vector<double> val(grid + 1);
    for (int k = 0; k <= grid; ++k) val[k] = f(static_cast<double>(k) / grid);
    double best = *std::min_element(val.begin(), val.end());
    const double g = (std::sqrt(5.0) - 1) / 2;
    for (int k = 1; k < grid; ++k) {
        if (!(val[k] <= val[k - 1] && val[k] <= val[k + 1])) continue;
        double lo = static_cast<double>(k - 1) / grid;
        double hi = static_cast<double>(k + 1) / grid;
        double c = hi - g * (hi - lo);
        double d = lo + g * (hi - lo);
        for (int it = 0; it < 80; ++it) {
            if (f(c) < f(d)) {
                hi = d;
            } else {
                lo = c;
            }
            c = hi - g * (hi - lo);
            d = lo + g * (hi - lo);
        }
        best = std::min(best, f(0.5 * (lo + hi)));
    }
    return best;
}

// ---------------------------------------------------------------------------
// Random valid problems
// ---------------------------------------------------------------------------

enum class Family { Positivity, Rectangle, AboveLine, BelowLine };

inline const char* family_name(Family f) {
    switch (f) {
    case Family::Positivity: return "positivity";
    case Family::Rectangle: return "rectangle";
    case Family::AboveLine: return "above_line";
    case Family::BelowLine: return "below_line";
    }
    return "?";
}

struct Problem {
    Hermite data;
    rcsfif::Constraint constraint;
    double rho = 0.9;
    double u = 1.0;
};

/// Data strictly inside the region of the constraint family, N knots.
inline Problem random_problem(std::mt19937_64& rng, Family family, std::size_t n) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto between = [&](double a, double b) { return a + (b - a) * unit(rng); };
    Problem p;
    p.rho = between(0.3, 0.95);
    p.u = between(0.2, 2.0);
    double x = between(-2.0, 2.0);
    for (std::size_t k = 0; k < n; ++k) {
        p.data.x.push_back(x);
        x += between(0.3, 2.0);
    }
    for (std::size_t k = 0; k < n; ++k) p.data.d.push_back(between(-3.0, 3.0));
    switch (family) {
    case Family::Positivity:
        for (std::size_t k = 0; k < n; ++k) p.data.y.push_back(between(0.2, 5.0));
        p.constraint = rcsfif::Positivity{};
        break;
    case Family::Rectangle: {
        const double c = between(-2.0, 0.0);
        const double d = c + between(1.0, 4.0);
        for (std::size_t k = 0; k < n; ++k) {
            p.data.y.push_back(between(c + 0.05 * (d - c), d - 0.05 * (d - c)));
        }
        p.constraint = rcsfif::Rectangle{c, d};
        break;
    }
    case Family::AboveLine:
    case Family::BelowLine: {
        const double m = between(-1.0, 1.0);
        const double k = between(-2.0, 2.0);
        const double sign = family == Family::AboveLine ? 1.0 : -1.0;
        for (std::size_t j = 0; j < n; ++j) {
            p.data.y.push_back(m * p.data.x[j] + k + sign * between(0.1, 3.0));
        }
        if (family == Family::AboveLine) {
            p.constraint = rcsfif::AboveLine{m, k};
        } else {
            p.constraint = rcsfif::BelowLine{m, k};
        }
        break;
    }
    }
    return p;
}

} // namespace oracle
