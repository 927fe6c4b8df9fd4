#pragma once

#include "rcsfif/attractor.hpp"
#include "rcsfif/constraint.hpp"
#include "rcsfif/evaluate.hpp"
#include "rcsfif/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace rcsfif {

struct ErrorBoundInputs {
    double y_sup = 0.0;
    double d_sup = 0.0;
    double u_sup = 0.0;
    double v_sup = 0.0;
    double alpha_sup = 0.0;
    double h = 0.0;
    double M = 0.0;  ///< |y|_inf + max{|y_1|, |y_N|}
    double s = 0.0;  ///< min_i (u_i + v_i / 4)
    double span = 0.0;
    double d_ends = 0.0;  ///< max{|d_1|, |d_N|}
};

inline ErrorBoundInputs error_bound_inputs(const FifModel& model) {
    const auto& data = model.data();
    const auto& p = model.params();
    ErrorBoundInputs in;
    for (double y : data.values()) in.y_sup = std::max(in.y_sup, std::abs(y));
    for (double d : data.derivatives()) in.d_sup = std::max(in.d_sup, std::abs(d));
    in.s = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < model.intervals(); ++i) {
        in.u_sup = std::max(in.u_sup, std::abs(p.u[i]));
        in.v_sup = std::max(in.v_sup, std::abs(p.v[i]));
        in.alpha_sup = std::max(in.alpha_sup, std::abs(p.alpha[i]));
        in.s = std::min(in.s, p.u[i] + 0.25 * p.v[i]);
    }
    in.h = model.partition().h_max;
    in.span = model.partition().width;
    in.M = in.y_sup + std::max(std::abs(data.values().front()), std::abs(data.values().back()));
    in.d_ends = std::max(std::abs(data.derivatives().front()), std::abs(data.derivatives().back()));
    return in;
}

/// Bound on sup |C - Psi| from the fractal perturbation:
/// |alpha| / (s (1 - |alpha|)) * {|u| M + [(3|u| + |v|) M + |u| (h |d| + (x_N - x_1) max|d_1,d_N|)] / 4}.
inline double perturbation_bound(const FifModel& model) {
    const auto in = error_bound_inputs(model);
    if (in.alpha_sup == 0.0) return 0.0;
    const double braces =
        in.u_sup * in.M + 0.25 * ((3.0 * in.u_sup + in.v_sup) * in.M +
                                  in.u_sup * (in.h * in.d_sup + in.span * in.d_ends));
    return in.alpha_sup / (in.s * (1.0 - in.alpha_sup)) * braces;
}

/// Full uniform bound on |Phi - Psi| for data sampled from Phi in C^3. The
/// classical-term constant is not derivable here and is supplied by the caller.
inline double total_error_bound(const FifModel& model, double phi3_norm, double c_const = 0.0) {
    if (!(phi3_norm >= 0.0) || !(c_const >= 0.0)) {
        throw Error(Errc::InvalidArgument, "phi3_norm and c_const must be non-negative");
    }
    const double h = model.partition().h_max;
    return 0.5 * phi3_norm * h * h * h * c_const + perturbation_bound(model);
}

struct MarginReport {
    double margin = 0.0;
    double x = 0.0;  ///< abscissa of the minimizing sample
    double y = 0.0;
    int depth = 0;
    std::size_t samples = 0;
};

inline MarginReport margin_of(const SampleSet& samples, const Constraint& constraint) {
    MarginReport r;
    r.margin = std::numeric_limits<double>::infinity();
    r.depth = samples.depth;
    r.samples = samples.points.size();
    for (const auto& s : samples.points) {
        const double m = constraint_margin(constraint, s.x, s.y);
        if (m < r.margin) {
            r.margin = m;
            r.x = s.x;
            r.y = s.y;
        }
    }
    return r;
}

/// Minimum of the constraint functional over the depth-level attractor samples.
inline MarginReport empirical_margin(const FifModel& model, const Constraint& constraint, int depth,
                                     std::size_t max_samples = kDefaultMaxSamples) {
    return margin_of(sample_attractor(model, depth, max_samples), constraint);
}

/// 256 uniformly spaced points plus every knot, sorted.
inline std::vector<double> sup_grid(const DataSet& data, std::size_t points = 256) {
    std::vector<double> grid;
    const double a = data.first_x();
    const double b = data.last_x();
    for (std::size_t k = 0; k < points; ++k) {
        grid.push_back(a + (b - a) * static_cast<double>(k) / static_cast<double>(points - 1));
    }
    grid.back() = b;
    grid.insert(grid.end(), data.knots().begin(), data.knots().end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

/// Grid sup-distance between the RCSFIF with uniform v and the affine FIF, for each v.
/// Grid maxima are lower bounds on the true sup norms.
inline std::vector<double> tension_study(const DataSet& data, const std::vector<double>& alphas,
                                         const std::vector<double>& u,
                                         const std::vector<double>& v_values, double tol = 1e-12) {
    for (std::size_t k = 0; k < v_values.size(); ++k) {
        if (!(v_values[k] >= 0.0) || (k > 0 && !(v_values[k] > v_values[k - 1]))) {
            throw Error(Errc::InvalidArgument, "v values must be non-negative and increasing");
        }
    }
    const auto grid = sup_grid(data);
    std::vector<double> out;
    for (double v : v_values) {
        const FifModel m =
            build_model(data, IfsParams{alphas, u, std::vector<double>(alphas.size(), v)});
        double sup = 0.0;
        for (double x : grid) {
            sup = std::max(sup, std::abs(eval_point(m, x, tol) - eval_affine_fif(m, x, tol)));
        }
        out.push_back(sup);
    }
    return out;
}

} // namespace rcsfif
