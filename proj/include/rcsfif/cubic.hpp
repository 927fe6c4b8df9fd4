#pragma once

#include <cmath>

namespace rcsfif {

namespace detail {

/// b x^2 + c x + d >= 0 for all x >= 0.
inline bool quadratic_nonneg_on_halfline(double b, double c, double d) {
    if (b == 0.0) return c >= 0.0 && d >= 0.0;
    if (b < 0.0 || d < 0.0) return false;
    if (c >= 0.0) return true;
    return c * c <= 4.0 * b * d;
}

} // namespace detail

/// Decides a3 x^3 + a2 x^2 + a1 x + a0 >= 0 for every x >= 0 via the coefficient
/// regions R1 = {all coefficients >= 0} and
/// R2 = {a3 >= 0, a0 >= 0, 4 a3 a1^3 + 4 a0 a2^3 + 27 a3^2 a0^2 - 18 a3 a2 a1 a0 - a2^2 a1^2 >= 0}.
/// R2 is exact only for a3 > 0 and a0 > 0; a vanishing end coefficient is
/// deflated to the lower-degree problem instead.
inline bool cubic_nonneg_oracle(double a3, double a2, double a1, double a0) {
    if (a3 >= 0.0 && a2 >= 0.0 && a1 >= 0.0 && a0 >= 0.0) return true;
    if (a3 < 0.0 || a0 < 0.0) return false;
    if (a3 == 0.0) return detail::quadratic_nonneg_on_halfline(a2, a1, a0);
    if (a0 == 0.0) return detail::quadratic_nonneg_on_halfline(a3, a2, a1);
    const double expr = 4.0 * a3 * a1 * a1 * a1 + 4.0 * a0 * a2 * a2 * a2 +
                        27.0 * a3 * a3 * a0 * a0 - 18.0 * a3 * a2 * a1 * a0 - a2 * a2 * a1 * a1;
    return expr >= 0.0;
}

} // namespace rcsfif
