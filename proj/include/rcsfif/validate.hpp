#pragma once

#include "rcsfif/constraint.hpp"
#include "rcsfif/cubic.hpp"
#include "rcsfif/error.hpp"
#include "rcsfif/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace rcsfif {

enum class Status {
    SatisfiesSufficient,  ///< meets the closed-form sufficient conditions
    SatisfiesOracle,      ///< fails them, but the exact cubic criterion holds
    Unproven,             ///< neither; not a witnessed violation
};

inline std::string to_string(Status s) {
    switch (s) {
    case Status::SatisfiesSufficient: return "SATISFIES_SUFFICIENT";
    case Status::SatisfiesOracle: return "SATISFIES_ORACLE";
    case Status::Unproven: return "UNPROVEN";
    }
    return "UNPROVEN";
}

struct IntervalVerdict {
    Status status = Status::Unproven;
    bool boundary = false;  ///< alpha within relative slack of an interval end
    bool alpha_admissible = false;
    AlphaInterval alpha_interval;
    double alpha = 0.0;
    double v = 0.0;
    double v_threshold = 0.0;
    std::string binding_threshold_label;
    double alpha_margin = 0.0;  ///< distance of alpha to the nearest interval end
    double v_margin = 0.0;      ///< v - binding threshold
};

struct ValidationReport {
    Constraint constraint;
    std::vector<IntervalVerdict> intervals;

    [[nodiscard]] bool all_satisfied() const {
        return std::all_of(intervals.begin(), intervals.end(),
                           [](const IntervalVerdict& v) { return v.status != Status::Unproven; });
    }
};

inline constexpr double kAlphaSlack = 1e-9;

namespace detail {

enum class AlphaPlacement { Inside, Boundary, Outside };

inline AlphaPlacement place_alpha(const AlphaInterval& iv, double alpha) {
    const auto shrink = [](double bound, bool towards_positive) {
        const double mag = std::abs(bound) * kAlphaSlack;
        return towards_positive ? bound + mag : bound - mag;
    };
    if (alpha > iv.hi || alpha < iv.lo) return AlphaPlacement::Outside;
    if ((!iv.hi_closed && alpha == iv.hi) || (!iv.lo_closed && alpha == iv.lo)) {
        return AlphaPlacement::Boundary;
    }
    const double hi_in = shrink(iv.hi, false);
    const double lo_in = iv.lo_closed ? iv.lo : shrink(iv.lo, true);
    if (alpha > hi_in || alpha < lo_in) return AlphaPlacement::Boundary;
    return AlphaPlacement::Inside;
}

inline bool oracle_applies(const Constraint& c) {
    return !std::holds_alternative<Rectangle>(c);
}

} // namespace detail

/// Per-interval check of a model against a constraint. Sufficiency is one-directional:
/// nothing here claims a violation.
inline ValidationReport validate(const FifModel& model, const Constraint& constraint) {
    const auto& data = model.data();
    check_data(data, constraint);
    const auto& p = model.params();
    const BoundsReport bounds = compute_bounds(data, constraint, p.u);
    ValidationReport report{constraint, {}};
    for (std::size_t i = 0; i < model.intervals(); ++i) {
        IntervalVerdict v;
        v.alpha = p.alpha[i];
        v.v = p.v[i];
        v.alpha_interval = bounds.alpha_intervals()[i];
        const auto placement = detail::place_alpha(v.alpha_interval, v.alpha);
        v.alpha_admissible = placement == detail::AlphaPlacement::Inside;
        v.boundary = placement == detail::AlphaPlacement::Boundary;
        v.alpha_margin = std::min(v.alpha - v.alpha_interval.lo, v.alpha_interval.hi - v.alpha);

        const ThresholdSet t = bounds.thresholds(i, v.alpha);
        v.v_threshold = t.binding;
        v.binding_threshold_label = t.binding_label;
        v.v_margin = v.v - t.binding;

        if (v.alpha_admissible && t.feasible() && v.v >= t.binding) {
            v.status = Status::SatisfiesSufficient;
        } else if (detail::oracle_applies(constraint) && v.alpha >= 0.0) {
            const auto cubics = margin_cubics(data, constraint, i, v.alpha, p.u[i], v.v);
            const bool ok = !cubics.empty() &&
                            std::all_of(cubics.begin(), cubics.end(), [](const MarginCubic& m) {
                                // t = s / (s + 1): U + V s + W s^2 + Z s^3 >= 0 on s >= 0
                                return cubic_nonneg_oracle(m.coeff[3], m.coeff[2], m.coeff[1],
                                                           m.coeff[0]);
                            });
            v.status = ok ? Status::SatisfiesOracle : Status::Unproven;
        }
        report.intervals.push_back(std::move(v));
    }
    return report;
}

struct SelectionPolicy {
    double rho = 0.9;     ///< alpha_i = rho * alpha_i^max
    double sigma = 0.01;  ///< slack added to the binding v threshold
    double u = 1.0;
    double kappa = 0.99;
};

/// Deterministic parameter choice that meets the sufficient conditions.
inline IfsParams auto_select(const DataSet& data, const Constraint& constraint,
                             const SelectionPolicy& policy = {}) {
    if (!(policy.rho >= 0.0 && policy.rho < 1.0)) {
        throw Error(Errc::InvalidArgument, "rho must lie in [0, 1)");
    }
    if (!(policy.sigma >= 0.0) || !(policy.u > 0.0)) {
        throw Error(Errc::InvalidArgument, "sigma must be >= 0 and u > 0");
    }
    const std::size_t n = data.intervals();
    const Partition part = build_partition(data);
    const BoundsReport bounds =
        compute_bounds(data, constraint, std::vector<double>(n, policy.u));
    IfsParams params;
    params.kappa = policy.kappa;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& iv = bounds.alpha_intervals()[i];
        double alpha = policy.rho * std::max(0.0, std::min(iv.hi, part.a[i]));
        alpha = std::min(alpha, policy.kappa * part.a[i]);
        const ThresholdSet t = bounds.thresholds(i, alpha);
        if (!t.feasible()) {
            throw Error(Errc::InfeasibleConstraint,
                        "interval " + std::to_string(i + 1) + ": no finite v threshold (" +
                            t.binding_label + ") for " + describe(constraint));
        }
        params.alpha.push_back(alpha);
        params.u.push_back(policy.u);
        params.v.push_back(t.binding + policy.sigma);
    }
    return params;
}

} // namespace rcsfif
