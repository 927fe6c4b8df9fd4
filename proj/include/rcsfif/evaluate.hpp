#pragma once

// Pointwise evaluation of the fractal function by unrolling its functional
// equation: for x in I_i, Psi(x) = alpha_i Psi(L_i^{-1} x) + q_i(L_i^{-1} x).
// After D levels the remaining unknown Psi(.) is replaced by the classical
// interpolant C; the error is then at most max|alpha|^D sup|Psi - C|.

#include "rcsfif/error.hpp"
#include "rcsfif/mesh.hpp"
#include "rcsfif/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

namespace rcsfif {

namespace detail {

inline void require_domain(const FifModel& model, double x) {
    if (!std::isfinite(x) || !model.in_domain(x)) {
        throw Error(Errc::OutOfDomain, "x = " + std::to_string(x) + " outside [" +
                                           std::to_string(model.partition().x_first) + ", " +
                                           std::to_string(model.partition().x_last) + "]");
    }
}

inline void require_tol(double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw Error(Errc::InvalidArgument, "tolerance must be a positive finite number");
    }
}

/// Smallest D with contraction^D * gap <= tol.
inline int recursion_depth(double contraction, double gap, double tol) {
    if (gap <= tol) return 0;
    if (contraction <= 0.0) return 1;
    const double levels = std::ceil(std::log(tol / gap) / std::log(contraction));
    constexpr double cap = 100000.0;
    return static_cast<int>(std::clamp(levels, 1.0, cap));
}

/// Local parameter of x inside interval i and the pre-image L_i^{-1}(x).
struct Preimage {
    double theta;
    double x;
};

inline Preimage preimage(const Partition& part, std::size_t i, double x, double x_i) {
    const double theta = std::clamp((x - x_i) / part.h[i], 0.0, 1.0);
    const double back = std::clamp(part.x_first + theta * part.width, part.x_first, part.x_last);
    return {theta, back};
}

} // namespace detail

/// Classical (alpha-free) rational cubic interpolant C at x.
inline double eval_classical(const FifModel& model, double x) {
    detail::require_domain(model, x);
    const auto& knots = model.data().knots();
    if (const auto k = find_knot(knots, x)) return model.data().y(*k);
    const std::size_t i = locate_interval(knots, x);
    const double t = (x - knots[i]) / model.partition().h[i];
    return model.classical_pieces()[i].value(t);
}

/// Derivative C'(x) of the classical interpolant.
inline double eval_classical_derivative(const FifModel& model, double x) {
    detail::require_domain(model, x);
    const auto& knots = model.data().knots();
    if (const auto k = find_knot(knots, x)) return model.data().d(*k);
    const std::size_t i = locate_interval(knots, x);
    const double t = (x - knots[i]) / model.partition().h[i];
    return model.classical_pieces()[i].dvalue(t) / model.partition().h[i];
}

/// Psi(x) with |result - Psi(x)| <= tol (up to roundoff).
inline double eval_point(const FifModel& model, double x, double tol) {
    detail::require_domain(model, x);
    detail::require_tol(tol);
    const auto& knots = model.data().knots();
    const auto& part = model.partition();
    const int depth = detail::recursion_depth(model.alpha_max(), model.value_gap_bound(), tol);

    double acc = 0.0;
    double scale = 1.0;
    for (int level = 0;; ++level) {
        if (const auto k = find_knot(knots, x)) return acc + scale * model.data().y(*k);
        if (level == depth) return acc + scale * eval_classical(model, x);
        const std::size_t i = locate_interval(knots, x);
        const auto pre = detail::preimage(part, i, x, knots[i]);
        acc += scale * model.pieces()[i].value(pre.theta);
        scale *= model.alpha(i);
        if (scale == 0.0) return acc;
        x = pre.x;
    }
}

/// Psi'(x) with |result - Psi'(x)| <= tol. Uses
/// Psi'(L_i x) = (alpha_i Psi'(x) + q_i'(x)) / a_i.
inline double eval_derivative_point(const FifModel& model, double x, double tol) {
    detail::require_domain(model, x);
    detail::require_tol(tol);
    if (!(model.slope_contraction() < 1.0)) {
        throw Error(Errc::ContractivityViolation, "derivative IFS does not contract");
    }
    const auto& knots = model.data().knots();
    const auto& part = model.partition();
    const int depth =
        detail::recursion_depth(model.slope_contraction(), model.slope_gap_bound(), tol);

    double acc = 0.0;
    double scale = 1.0;
    for (int level = 0;; ++level) {
        if (const auto k = find_knot(knots, x)) return acc + scale * model.data().d(*k);
        if (level == depth) return acc + scale * eval_classical_derivative(model, x);
        const std::size_t i = locate_interval(knots, x);
        const auto pre = detail::preimage(part, i, x, knots[i]);
        // q_i'(x) / a_i = (dq/dtheta) / (a_i (x_N - x_1)) = (dq/dtheta) / h_i
        acc += scale * model.pieces()[i].dvalue(pre.theta) / part.h[i];
        scale *= model.alpha(i) / part.a[i];
        if (scale == 0.0) return acc;
        x = pre.x;
    }
}

/// Piecewise linear interpolant of the knots.
inline double eval_piecewise_linear(const FifModel& model, double x) {
    detail::require_domain(model, x);
    const auto& knots = model.data().knots();
    if (const auto k = find_knot(knots, x)) return model.data().y(*k);
    const std::size_t i = locate_interval(knots, x);
    const double t = (x - knots[i]) / model.partition().h[i];
    return (1.0 - t) * model.data().y(i) + t * model.data().y(i + 1);
}

/// Affine FIF reached as v -> infinity:
/// Psi(L_i x) = alpha_i Psi(x) + (y_i - alpha_i y_1)(1 - t) + (y_{i+1} - alpha_i y_N) t.
inline double eval_affine_fif(const FifModel& model, double x, double tol) {
    detail::require_domain(model, x);
    detail::require_tol(tol);
    const auto& data = model.data();
    const auto& knots = data.knots();
    const auto& part = model.partition();
    const double y1 = data.values().front();
    const double yn = data.values().back();
    const int depth = detail::recursion_depth(model.alpha_max(), model.affine_gap_bound(), tol);

    double acc = 0.0;
    double scale = 1.0;
    for (int level = 0;; ++level) {
        if (const auto k = find_knot(knots, x)) return acc + scale * data.y(*k);
        if (level == depth) return acc + scale * eval_piecewise_linear(model, x);
        const std::size_t i = locate_interval(knots, x);
        const auto pre = detail::preimage(part, i, x, knots[i]);
        const double al = model.alpha(i);
        const double t = pre.theta;
        acc += scale * ((data.y(i) - al * y1) * (1.0 - t) + (data.y(i + 1) - al * yn) * t);
        scale *= al;
        if (scale == 0.0) return acc;
        x = pre.x;
    }
}

} // namespace rcsfif
