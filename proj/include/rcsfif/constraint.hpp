#pragma once

// Admissible scaling factors and shape-parameter thresholds for the three
// constraint families: positivity, containment in a horizontal band
// [c, d] ("rectangle" over the whole domain) and staying above a line. The
// "below a line" case is reduced to "above" by the reflection y -> -y.
//
// Every bound here comes from asking that the numerator of
//   alpha_i y + q_i(x) - lower(L_i x)        (y >= lower(x))
// be non-negative, coefficient by coefficient, in the cubic Bernstein basis
// after degree-elevating the quadratic denominator to (u, 3u+v, 3u+v, u).

#include "rcsfif/error.hpp"
#include "rcsfif/mesh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace rcsfif {

struct Positivity {
    friend bool operator==(const Positivity&, const Positivity&) = default;
};
/// Band c <= Psi <= d. Either side may be infinite, which disables it.
struct Rectangle {
    double lower = 0.0;
    double upper = 0.0;
    friend bool operator==(const Rectangle&, const Rectangle&) = default;
};
struct AboveLine {
    double slope = 0.0;
    double intercept = 0.0;
    friend bool operator==(const AboveLine&, const AboveLine&) = default;
};
struct BelowLine {
    double slope = 0.0;
    double intercept = 0.0;
    friend bool operator==(const BelowLine&, const BelowLine&) = default;
};

using Constraint = std::variant<Positivity, Rectangle, AboveLine, BelowLine>;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline std::string describe(const Constraint& c) {
    return std::visit(
        overloaded{
            [](const Positivity&) { return std::string("positivity"); },
            [](const Rectangle& r) {
                return "rectangle[" + std::to_string(r.lower) + ", " + std::to_string(r.upper) + "]";
            },
            [](const AboveLine& l) {
                return "above-line(m=" + std::to_string(l.slope) +
                       ", k=" + std::to_string(l.intercept) + ")";
            },
            [](const BelowLine& l) {
                return "below-line(m=" + std::to_string(l.slope) +
                       ", k=" + std::to_string(l.intercept) + ")";
            },
        },
        c);
}

/// Signed distance of (x, y) inside the constrained region; negative means violated.
inline double constraint_margin(const Constraint& c, double x, double y) {
    return std::visit(overloaded{
                          [&](const Positivity&) { return y; },
                          [&](const Rectangle& r) { return std::min(y - r.lower, r.upper - y); },
                          [&](const AboveLine& l) { return y - (l.slope * x + l.intercept); },
                          [&](const BelowLine& l) { return (l.slope * x + l.intercept) - y; },
                      },
                      c);
}

/// Throws if the data itself does not satisfy the constraint hypotheses.
inline void check_data(const DataSet& data, const Constraint& c) {
    const auto& x = data.knots();
    const auto& y = data.values();
    for (std::size_t i = 0; i < data.size(); ++i) {
        std::visit(overloaded{
                       [&](const Positivity&) {
                           if (!(y[i] > 0.0)) {
                               throw Error(Errc::NonPositiveData,
                                           "y_" + std::to_string(i + 1) + " is not positive");
                           }
                       },
                       [&](const Rectangle& r) {
                           if (!(r.lower < r.upper) || y[i] < r.lower || y[i] > r.upper) {
                               throw Error(Errc::DataOutsideRectangle,
                                           "y_" + std::to_string(i + 1) + " outside [c, d]");
                           }
                       },
                       [&](const AboveLine& l) {
                           if (!(y[i] > l.slope * x[i] + l.intercept)) {
                               throw Error(Errc::DataNotAboveLine,
                                           "point " + std::to_string(i + 1) + " not above the line");
                           }
                       },
                       [&](const BelowLine& l) {
                           if (!(y[i] < l.slope * x[i] + l.intercept)) {
                               throw Error(Errc::DataNotBelowLine,
                                           "point " + std::to_string(i + 1) + " not below the line");
                           }
                       },
                   },
                   c);
    }
}

// ---------------------------------------------------------------------------
// Scaling-factor intervals
// ---------------------------------------------------------------------------

struct AlphaInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = false;
    std::string lo_label;
    std::string hi_label;

    [[nodiscard]] bool contains(double alpha) const noexcept {
        const bool above = lo_closed ? alpha >= lo : alpha > lo;
        const bool below = hi_closed ? alpha <= hi : alpha < hi;
        return above && below;
    }
};

namespace detail {

/// Primitive inequality num - alpha * den >= 0.
struct LinearCap {
    double num;
    double den;
    const char* label;
};

/// Tightest upper bound on alpha >= 0 from caps; non-positive denominators with
/// non-negative numerators impose nothing.
inline void apply_upper_caps(AlphaInterval& out, std::initializer_list<LinearCap> caps) {
    for (const auto& c : caps) {
        double bound = std::numeric_limits<double>::infinity();
        if (c.den > 0.0) {
            bound = c.num / c.den;
        } else if (c.num < 0.0) {
            bound = -std::numeric_limits<double>::infinity();
        }
        if (bound < out.hi) {
            out.hi = bound;
            out.hi_label = c.label;
        }
    }
}

/// Tightest lower bound on alpha < 0 from caps (num - alpha den >= 0 with den < 0).
inline void apply_lower_caps(AlphaInterval& out, std::initializer_list<LinearCap> caps) {
    for (const auto& c : caps) {
        double bound = -std::numeric_limits<double>::infinity();
        if (c.den < 0.0) {
            bound = c.num / c.den;
        } else if (c.num < 0.0) {
            bound = std::numeric_limits<double>::infinity();
        }
        if (bound > out.lo) {
            out.lo = bound;
            out.lo_label = c.label;
        }
    }
}

inline AlphaInterval nonnegative_interval(double a_i) {
    AlphaInterval out;
    out.lo = 0.0;
    out.lo_closed = true;
    out.lo_label = "zero";
    out.hi = a_i;
    out.hi_closed = false;
    out.hi_label = "a_i";
    return out;
}

} // namespace detail

/// Per interval [0, min{a_i, y_i / y_1, y_{i+1} / y_N}).
inline std::vector<AlphaInterval> positivity_alpha_bounds(const DataSet& data) {
    check_data(data, Positivity{});
    const Partition part = build_partition(data);
    const auto& y = data.values();
    std::vector<AlphaInterval> out;
    for (std::size_t i = 0; i < data.intervals(); ++i) {
        auto iv = detail::nonnegative_interval(part.a[i]);
        detail::apply_upper_caps(iv, {{y[i], y.front(), "y_i/y_1"},
                                      {y[i + 1], y.back(), "y_i+1/y_N"}});
        out.push_back(iv);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Shape-parameter thresholds, in the closed forms of the sufficiency theorems
// ---------------------------------------------------------------------------

struct Threshold {
    std::string label;
    double value = 0.0;  ///< +inf: unattainable for this alpha; -inf: no condition
};

struct ThresholdSet {
    std::vector<Threshold> terms;
    double binding = 0.0;
    std::string binding_label = "zero";

    [[nodiscard]] bool feasible() const noexcept { return std::isfinite(binding); }
};

namespace detail {

inline constexpr double kDegenerateDenominator = 1e-12;

/// Threshold v >= -u [base + num / den], evaluated from the primitive form of the
/// middle coefficient u (base den + num) + v den >= 0.
inline double ratio_threshold(double u, double base, double num, double den) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (std::abs(den) <= kDegenerateDenominator) {
        return u * (num + base * den) >= 0.0 ? -inf : inf;
    }
    if (den < 0.0) return inf;
    return -u * (base + num / den);
}

inline ThresholdSet finish(std::vector<Threshold> terms) {
    ThresholdSet s;
    s.terms = std::move(terms);
    s.binding = 0.0;
    s.binding_label = "zero";
    for (const auto& t : s.terms) {
        if (t.value > s.binding) {
            s.binding = t.value;
            s.binding_label = t.label;
        }
    }
    return s;
}

inline ThresholdSet no_theorem(const char* why) {
    ThresholdSet s;
    s.binding = std::numeric_limits<double>::infinity();
    s.binding_label = why;
    return s;
}

/// Shared data of interval i for the threshold formulas.
struct IntervalData {
    double yi, yi1, y1, yn;  ///< y_i, y_{i+1}, y_1, y_N
    double di, di1, d1, dn;
    double xi, xi1, x1, xn;
    double h, span;
};

inline IntervalData interval_data(const DataSet& data, const Partition& part, std::size_t i) {
    const auto& y = data.values();
    const auto& d = data.derivatives();
    const auto& x = data.knots();
    return {y[i], y[i + 1], y.front(), y.back(), d[i], d[i + 1], d.front(), d.back(),
            x[i], x[i + 1], x.front(), x.back(), part.h[i], part.width};
}

} // namespace detail

namespace thresholds {

/// Positivity, left end: -u [3 + (h d_i - alpha (x_N - x_1) d_1) / (y_i - alpha y_1)].
inline double positivity_left(const detail::IntervalData& s, double alpha, double u) {
    return detail::ratio_threshold(u, 3.0, s.h * s.di - alpha * s.span * s.d1, s.yi - alpha * s.y1);
}
inline double positivity_right(const detail::IntervalData& s, double alpha, double u) {
    return detail::ratio_threshold(u, 3.0, -s.h * s.di1 + alpha * s.span * s.dn,
                                   s.yi1 - alpha * s.yn);
}

// Band [c, d], alpha >= 0.
inline double v1(const detail::IntervalData& s, double alpha, double u, double c) {
    return detail::ratio_threshold(u, 3.0, s.h * s.di - alpha * s.span * s.d1,
                                   s.yi - c - alpha * (s.y1 - c));
}
inline double v2(const detail::IntervalData& s, double alpha, double u, double c) {
    return detail::ratio_threshold(u, 3.0, -s.h * s.di1 + alpha * s.span * s.dn,
                                   s.yi1 - c - alpha * (s.yn - c));
}
inline double v3(const detail::IntervalData& s, double alpha, double u, double d) {
    return detail::ratio_threshold(u, 3.0, -s.h * s.di + alpha * s.span * s.d1,
                                   d - s.yi - alpha * (d - s.y1));
}
inline double v4(const detail::IntervalData& s, double alpha, double u, double d) {
    return detail::ratio_threshold(u, 3.0, s.h * s.di1 - alpha * s.span * s.dn,
                                   d - s.yi1 - alpha * (d - s.yn));
}

// Band [c, d], alpha < 0.
inline double v5(const detail::IntervalData& s, double alpha, double u, double c, double d) {
    return detail::ratio_threshold(u, 3.0, s.h * s.di - alpha * s.span * s.d1,
                                   s.yi - c - alpha * (s.y1 - d));
}
inline double v6(const detail::IntervalData& s, double alpha, double u, double c, double d) {
    return detail::ratio_threshold(u, 3.0, -s.h * s.di1 + alpha * s.span * s.dn,
                                   s.yi1 - c - alpha * (s.yn - d));
}
inline double v7(const detail::IntervalData& s, double alpha, double u, double c, double d) {
    return detail::ratio_threshold(u, 3.0, -s.h * s.di + alpha * s.span * s.d1,
                                   d - s.yi - alpha * (c - s.y1));
}
inline double v8(const detail::IntervalData& s, double alpha, double u, double c, double d) {
    return detail::ratio_threshold(u, 3.0, s.h * s.di1 - alpha * s.span * s.dn,
                                   d - s.yi1 - alpha * (c - s.yn));
}

// Above the line t = m x + k, alpha >= 0.
inline double v9(const detail::IntervalData& s, double alpha, double u, double m, double k) {
    const double ti = m * s.xi + k;
    const double ti1 = m * s.xi1 + k;
    const double t1 = m * s.x1 + k;
    const double tn = m * s.xn + k;
    const double num = 2.0 * (s.yi - ti) + (s.yi - ti1) + s.h * s.di -
                       alpha * (2.0 * (s.y1 - t1) + (s.y1 - tn) + s.span * s.d1);
    return detail::ratio_threshold(u, 0.0, num, s.yi - ti - alpha * (s.y1 - t1));
}
inline double v10(const detail::IntervalData& s, double alpha, double u, double m, double k) {
    const double ti = m * s.xi + k;
    const double ti1 = m * s.xi1 + k;
    const double t1 = m * s.x1 + k;
    const double tn = m * s.xn + k;
    const double num = (s.yi1 - ti) + 2.0 * (s.yi1 - ti1) - s.h * s.di1 -
                       alpha * ((s.yn - t1) + 2.0 * (s.yn - tn) - s.span * s.dn);
    return detail::ratio_threshold(u, 0.0, num, s.yi1 - ti1 - alpha * (s.yn - tn));
}

} // namespace thresholds

/// Positivity threshold for v_i at the given alpha_i (0-based interval i). Throws
/// AlphaOnBoundary when alpha_i sits at or beyond its admissible limit.
inline double positivity_v_threshold(const DataSet& data, std::size_t i, double alpha, double u) {
    check_data(data, Positivity{});
    if (i >= data.intervals()) throw Error(Errc::InvalidArgument, "interval index out of range");
    if (!(u > 0.0)) throw Error(Errc::NonPositiveU, "u must be > 0");
    const Partition part = build_partition(data);
    const auto s = detail::interval_data(data, part, i);
    const double left = s.yi - alpha * s.y1;
    const double right = s.yi1 - alpha * s.yn;
    if (left <= detail::kDegenerateDenominator || right <= detail::kDegenerateDenominator) {
        throw Error(Errc::AlphaOnBoundary,
                    "interval " + std::to_string(i + 1) + ": alpha = " + std::to_string(alpha) +
                        " makes y_i - alpha y_1 or y_{i+1} - alpha y_N non-positive");
    }
    return std::max({0.0, thresholds::positivity_left(s, alpha, u),
                     thresholds::positivity_right(s, alpha, u)});
}

// ---------------------------------------------------------------------------
// Bounds reports
// ---------------------------------------------------------------------------

/// Admissible alpha intervals for one constraint, plus the v thresholds as a
/// function of the chosen alpha_i (with the u values given at construction).
class BoundsReport {
public:
    BoundsReport(Constraint constraint, DataSet data, std::vector<double> u,
                 std::vector<AlphaInterval> alpha)
        : constraint_(std::move(constraint)),
          data_(std::move(data)),
          part_(build_partition(data_)),
          u_(std::move(u)),
          alpha_(std::move(alpha)) {}

    [[nodiscard]] const Constraint& constraint() const noexcept { return constraint_; }
    [[nodiscard]] const DataSet& data() const noexcept { return data_; }
    [[nodiscard]] const std::vector<double>& u() const noexcept { return u_; }
    [[nodiscard]] const std::vector<AlphaInterval>& alpha_intervals() const noexcept {
        return alpha_;
    }
    [[nodiscard]] std::size_t intervals() const noexcept { return alpha_.size(); }

    /// All labelled thresholds for v_i at alpha, and the binding maximum with 0.
    [[nodiscard]] ThresholdSet thresholds(std::size_t i, double alpha) const {
        return thresholds(i, alpha, u_.at(i));
    }

    [[nodiscard]] ThresholdSet thresholds(std::size_t i, double alpha, double u) const {
        const auto s = detail::interval_data(data_, part_, i);
        return std::visit(
            overloaded{
                [&](const Positivity&) {
                    if (alpha < 0.0) return detail::no_theorem("alpha<0");
                    return detail::finish({{"pos_left", thresholds::positivity_left(s, alpha, u)},
                                           {"pos_right", thresholds::positivity_right(s, alpha, u)}});
                },
                [&](const Rectangle& r) {
                    std::vector<Threshold> t;
                    const bool has_c = std::isfinite(r.lower);
                    const bool has_d = std::isfinite(r.upper);
                    if (alpha >= 0.0) {
                        if (has_c) {
                            t.push_back({"v1", thresholds::v1(s, alpha, u, r.lower)});
                            t.push_back({"v2", thresholds::v2(s, alpha, u, r.lower)});
                        }
                        if (has_d) {
                            t.push_back({"v3", thresholds::v3(s, alpha, u, r.upper)});
                            t.push_back({"v4", thresholds::v4(s, alpha, u, r.upper)});
                        }
                        return detail::finish(std::move(t));
                    }
                    if (!has_c || !has_d) return detail::no_theorem("alpha<0 needs both sides");
                    t.push_back({"v5", thresholds::v5(s, alpha, u, r.lower, r.upper)});
                    t.push_back({"v6", thresholds::v6(s, alpha, u, r.lower, r.upper)});
                    t.push_back({"v7", thresholds::v7(s, alpha, u, r.lower, r.upper)});
                    t.push_back({"v8", thresholds::v8(s, alpha, u, r.lower, r.upper)});
                    return detail::finish(std::move(t));
                },
                [&](const AboveLine& l) {
                    if (alpha < 0.0) return detail::no_theorem("alpha<0");
                    return detail::finish(
                        {{"v9", thresholds::v9(s, alpha, u, l.slope, l.intercept)},
                         {"v10", thresholds::v10(s, alpha, u, l.slope, l.intercept)}});
                },
                [&](const BelowLine& l) {
                    if (alpha < 0.0) return detail::no_theorem("alpha<0");
                    // Reflected data lies above the reflected line.
                    auto r = s;
                    r.yi = -r.yi;
                    r.yi1 = -r.yi1;
                    r.y1 = -r.y1;
                    r.yn = -r.yn;
                    r.di = -r.di;
                    r.di1 = -r.di1;
                    r.d1 = -r.d1;
                    r.dn = -r.dn;
                    return detail::finish(
                        {{"v9", thresholds::v9(r, alpha, u, -l.slope, -l.intercept)},
                         {"v10", thresholds::v10(r, alpha, u, -l.slope, -l.intercept)}});
                },
            },
            constraint_);
    }

private:
    Constraint constraint_;
    DataSet data_;
    Partition part_;
    std::vector<double> u_;
    std::vector<AlphaInterval> alpha_;
};

namespace detail {

inline void check_u(const DataSet& data, const std::vector<double>& u) {
    if (u.size() != data.intervals()) {
        throw Error(Errc::LengthMismatch, "u must have one entry per interval");
    }
    for (double v : u) {
        if (!(v > 0.0) || !std::isfinite(v)) throw Error(Errc::NonPositiveU, "u must be > 0");
    }
    (void)data.derivatives();
}

} // namespace detail

inline BoundsReport positivity_bounds(const DataSet& data, std::vector<double> u) {
    detail::check_u(data, u);
    return BoundsReport(Positivity{}, data, std::move(u), positivity_alpha_bounds(data));
}

inline BoundsReport rectangle_bounds(const DataSet& data, double c, double d,
                                     std::vector<double> u) {
    const Rectangle rect{c, d};
    check_data(data, rect);
    detail::check_u(data, u);
    const Partition part = build_partition(data);
    const auto& y = data.values();
    const double y1 = y.front();
    const double yn = y.back();
    const bool has_c = std::isfinite(c);
    const bool has_d = std::isfinite(d);
    std::vector<AlphaInterval> out;
    for (std::size_t i = 0; i < data.intervals(); ++i) {
        auto iv = detail::nonnegative_interval(part.a[i]);
        iv.hi_closed = false;
        if (has_c) {
            detail::apply_upper_caps(iv, {{y[i] - c, y1 - c, "(y_i-c)/(y_1-c)"},
                                          {y[i + 1] - c, yn - c, "(y_i+1-c)/(y_N-c)"}});
        }
        if (has_d) {
            detail::apply_upper_caps(iv, {{d - y[i], d - y1, "(d-y_i)/(d-y_1)"},
                                          {d - y[i + 1], d - yn, "(d-y_i+1)/(d-y_N)"}});
        }
        // Negative scaling factors need both sides of the band.
        if (has_c && has_d) {
            iv.lo = -part.a[i];
            iv.lo_label = "-a_i";
            detail::apply_lower_caps(iv, {{y[i] - c, y1 - d, "(y_i-c)/(y_1-d)"},
                                          {y[i + 1] - c, yn - d, "(y_i+1-c)/(y_N-d)"},
                                          {d - y[i], c - y1, "(d-y_i)/(c-y_1)"},
                                          {d - y[i + 1], c - yn, "(d-y_i+1)/(c-y_N)"}});
            iv.lo_closed = false;
            if (iv.lo > 0.0) {
                iv.lo = 0.0;
                iv.lo_closed = true;
                iv.lo_label = "zero";
            }
        }
        out.push_back(iv);
    }
    return BoundsReport(rect, data, std::move(u), std::move(out));
}

inline BoundsReport above_line_bounds(const DataSet& data, double m, double k,
                                      std::vector<double> u) {
    const AboveLine line{m, k};
    check_data(data, line);
    detail::check_u(data, u);
    const Partition part = build_partition(data);
    const auto& x = data.knots();
    const auto& y = data.values();
    const auto t = [&](std::size_t j) { return m * x[j] + k; };
    const std::size_t last = data.size() - 1;
    std::vector<AlphaInterval> out;
    for (std::size_t i = 0; i < data.intervals(); ++i) {
        auto iv = detail::nonnegative_interval(part.a[i]);
        detail::apply_upper_caps(
            iv, {{y[i] - t(i), y[0] - t(0), "(y_i-t_i)/(y_1-t_1)"},
                 {y[i + 1] - t(i + 1), y[last] - t(last), "(y_i+1-t_i+1)/(y_N-t_N)"}});
        out.push_back(iv);
    }
    return BoundsReport(line, data, std::move(u), std::move(out));
}

/// Reflection y -> -y turns "below t = m x + k" into "above t = -m x - k".
inline BoundsReport below_line_bounds(const DataSet& data, double m, double k,
                                      std::vector<double> u) {
    check_data(data, BelowLine{m, k});
    const BoundsReport reflected = above_line_bounds(data.reflected(), -m, -k, u);
    return BoundsReport(BelowLine{m, k}, data, std::move(u), reflected.alpha_intervals());
}

inline BoundsReport compute_bounds(const DataSet& data, const Constraint& c,
                                   std::vector<double> u) {
    return std::visit(
        overloaded{
            [&](const Positivity&) { return positivity_bounds(data, std::move(u)); },
            [&](const Rectangle& r) { return rectangle_bounds(data, r.lower, r.upper, std::move(u)); },
            [&](const AboveLine& l) {
                return above_line_bounds(data, l.slope, l.intercept, std::move(u));
            },
            [&](const BelowLine& l) {
                return below_line_bounds(data, l.slope, l.intercept, std::move(u));
            },
        },
        c);
}

// ---------------------------------------------------------------------------
// Primitive margin coefficients
// ---------------------------------------------------------------------------

/// Bernstein coefficients (of (1-t)^3, (1-t)^2 t, (1-t) t^2, t^3) of the numerator
/// of one side's margin over interval i, for a given (alpha, u, v). The curve
/// stays on the right side of that boundary whenever all four are >= 0.
struct MarginCubic {
    std::string side;
    std::array<double, 4> coeff{};
};

namespace detail {

struct AffineBound {
    double m;
    double k;
    [[nodiscard]] double at(double x) const { return m * x + k; }
};

struct Sides {
    std::optional<AffineBound> lower;
    std::optional<AffineBound> upper;
};

inline Sides sides_of(const Constraint& c) {
    return std::visit(
        overloaded{
            [](const Positivity&) { return Sides{AffineBound{0.0, 0.0}, std::nullopt}; },
            [](const Rectangle& r) {
                Sides s;
                if (std::isfinite(r.lower)) s.lower = AffineBound{0.0, r.lower};
                if (std::isfinite(r.upper)) s.upper = AffineBound{0.0, r.upper};
                return s;
            },
            [](const AboveLine& l) { return Sides{AffineBound{l.slope, l.intercept}, std::nullopt}; },
            [](const BelowLine& l) { return Sides{std::nullopt, AffineBound{l.slope, l.intercept}}; },
        },
        c);
}

/// Linear-in-t target A (1-t) + B t times the elevated denominator.
inline std::array<double, 4> elevate(double A, double B, double u, double v) {
    return {A * u, A * (2.0 * u + v) + B * u, A * u + B * (2.0 * u + v), B * u};
}

} // namespace detail

/// Margin numerators for every active side; empty when the sign of alpha admits
/// no sufficient condition (alpha < 0 with a one-sided constraint).
inline std::vector<MarginCubic> margin_cubics(const DataSet& data, const Constraint& c,
                                              std::size_t i, double alpha, double u, double v) {
    const Partition part = build_partition(data);
    const auto& x = data.knots();
    const auto& y = data.values();
    const auto& d = data.derivatives();
    const double span = part.width;
    const double left = y[i] - alpha * y.front();
    const double right = y[i + 1] - alpha * y.back();
    const std::array<double, 4> p{u * left,
                                  (3.0 * u + v) * left + u * part.h[i] * d[i] -
                                      alpha * u * span * d.front(),
                                  (3.0 * u + v) * right - u * part.h[i] * d[i + 1] +
                                      alpha * u * span * d.back(),
                                  u * right};
    const auto sides = detail::sides_of(c);
    const double x1 = x.front();
    const double xn = x.back();
    std::vector<MarginCubic> out;
    if (alpha < 0.0 && !(sides.lower && sides.upper)) return out;
    // Worst case of alpha * Psi(x): the same side for alpha >= 0, the opposite one otherwise.
    if (sides.lower) {
        const auto& lo = *sides.lower;
        const auto& ref = alpha >= 0.0 ? lo : *sides.upper;
        const auto q = detail::elevate(lo.at(x[i]) - alpha * ref.at(x1),
                                       lo.at(x[i + 1]) - alpha * ref.at(xn), u, v);
        MarginCubic mc{"lower", {}};
        for (std::size_t k = 0; k < 4; ++k) mc.coeff[k] = p[k] - q[k];
        out.push_back(mc);
    }
    if (sides.upper) {
        const auto& up = *sides.upper;
        const auto& ref = alpha >= 0.0 ? up : *sides.lower;
        const auto q = detail::elevate(up.at(x[i]) - alpha * ref.at(x1),
                                       up.at(x[i + 1]) - alpha * ref.at(xn), u, v);
        MarginCubic mc{"upper", {}};
        for (std::size_t k = 0; k < 4; ++k) mc.coeff[k] = q[k] - p[k];
        out.push_back(mc);
    }
    return out;
}

} // namespace rcsfif
