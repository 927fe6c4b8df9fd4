#pragma once

// Rational cubic IFS model: per interval the map
//   w_i(x, y) = (L_i(x), alpha_i y + q_i(x)),
//   q_i = P_i(theta) / Q_i(theta),  theta = (x - x_1) / (x_N - x_1),
//   P_i = U (1-t)^3 + V (1-t)^2 t + W (1-t) t^2 + Z t^3,
//   Q_i = u + v t (1-t).
// The coefficients U, V, W, Z are fixed by interpolation of (y_i, d_i) and
// (y_{i+1}, d_{i+1}) so that the attractor is the graph of a C^1 function.

#include "rcsfif/error.hpp"
#include "rcsfif/mesh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace rcsfif {

struct IfsParams {
    std::vector<double> alpha;  ///< scaling factors, one per interval
    std::vector<double> u;      ///< shape parameters, u_i > 0
    std::vector<double> v;      ///< shape parameters, v_i >= 0
    double kappa = 0.99;        ///< contraction cap: |alpha_i| <= kappa a_i

    friend bool operator==(const IfsParams&, const IfsParams&) = default;
};

/// One rational cubic piece in Bernstein form over t in [0,1].
struct RationalCubic {
    double U = 0.0;
    double V = 0.0;
    double W = 0.0;
    double Z = 0.0;
    double u = 1.0;
    double v = 0.0;

    struct Eval {
        double value;
        double dvalue;  ///< derivative with respect to t
    };

    /// Numerator by de Casteljau on the normalized control values (U, V/3, W/3, Z).
    [[nodiscard]] Eval eval(double t) const noexcept {
        const double s = 1.0 - t;
        const double b0 = U;
        const double b1 = V / 3.0;
        const double b2 = W / 3.0;
        const double b3 = Z;
        const double c0 = s * b0 + t * b1;
        const double c1 = s * b1 + t * b2;
        const double c2 = s * b2 + t * b3;
        const double e0 = s * c0 + t * c1;
        const double e1 = s * c1 + t * c2;
        const double p = s * e0 + t * e1;
        const double dp = 3.0 * (e1 - e0);
        const double q = u + v * t * s;
        const double dq = v * (1.0 - 2.0 * t);
        return {p / q, (dp * q - p * dq) / (q * q)};
    }

    [[nodiscard]] double value(double t) const noexcept { return eval(t).value; }
    [[nodiscard]] double dvalue(double t) const noexcept { return eval(t).dvalue; }

    friend bool operator==(const RationalCubic&, const RationalCubic&) = default;

    /// Bernstein-coefficient bound on sup |P/Q| over [0,1]; valid because the
    /// degree-elevated denominator (u, 3u+v, 3u+v, u) is positive.
    [[nodiscard]] double abs_bound() const noexcept {
        const double m = 3.0 * u + v;
        return std::max({std::abs(U) / u, std::abs(V) / m, std::abs(W) / m, std::abs(Z) / u});
    }

    /// Crude bound on sup |d(P/Q)/dt| over [0,1].
    [[nodiscard]] double abs_dbound() const noexcept {
        const std::array<double, 4> b{U, V / 3.0, W / 3.0, Z};
        double pmax = 0.0;
        double dpmax = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
            pmax = std::max(pmax, std::abs(b[k]));
            if (k < 3) dpmax = std::max(dpmax, 3.0 * std::abs(b[k + 1] - b[k]));
        }
        return (dpmax * (u + 0.25 * v) + pmax * v) / (u * u);
    }
};

/// Coefficients of the piece that maps (x_1, y_1, d_1)...(x_N, y_N, d_N) onto
/// interval i with scaling factor alpha. alpha = 0 gives the classical rational cubic.
inline RationalCubic make_piece(const DataSet& data, const Partition& part, std::size_t i,
                                double alpha, double u, double v) {
    const auto& y = data.values();
    const auto& d = data.derivatives();
    const double y1 = y.front();
    const double yn = y.back();
    const double h = part.h[i];
    const double span = part.width;
    const double left = y[i] - alpha * y1;
    const double right = y[i + 1] - alpha * yn;
    RationalCubic r;
    r.u = u;
    r.v = v;
    r.U = u * left;
    r.Z = u * right;
    r.V = (3.0 * u + v) * left + u * h * d[i] - alpha * u * span * d.front();
    r.W = (3.0 * u + v) * right - u * h * d[i + 1] + alpha * u * span * d.back();
    return r;
}

/// Piece R_i such that q_i = c_i - alpha_i R_i, where c_i is the classical piece:
/// the rational cubic Hermite interpolant of the two domain endpoints.
inline RationalCubic make_endpoint_piece(const DataSet& data, const Partition& part,
                                         double u, double v) {
    const auto& y = data.values();
    const auto& d = data.derivatives();
    RationalCubic r;
    r.u = u;
    r.v = v;
    r.U = u * y.front();
    r.Z = u * y.back();
    r.V = (3.0 * u + v) * y.front() + u * part.width * d.front();
    r.W = (3.0 * u + v) * y.back() - u * part.width * d.back();
    return r;
}

class FifModel;
FifModel build_model(const DataSet& data, const IfsParams& params);

/// Fully specified RCSFIF. Immutable; coefficients are always derived, never stored.
class FifModel {
public:
    [[nodiscard]] const DataSet& data() const noexcept { return data_; }
    [[nodiscard]] const Partition& partition() const noexcept { return part_; }
    [[nodiscard]] const IfsParams& params() const noexcept { return params_; }
    [[nodiscard]] const std::vector<RationalCubic>& pieces() const noexcept { return pieces_; }
    [[nodiscard]] const std::vector<RationalCubic>& classical_pieces() const noexcept {
        return classical_;
    }
    [[nodiscard]] std::size_t intervals() const noexcept { return pieces_.size(); }

    [[nodiscard]] double alpha(std::size_t i) const { return params_.alpha[i]; }
    [[nodiscard]] double alpha_max() const noexcept { return alpha_max_; }
    /// max |alpha_i| / a_i: contraction factor of the derivative IFS.
    [[nodiscard]] double slope_contraction() const noexcept { return slope_contraction_; }

    /// Upper bound on sup |Psi - C| (C the classical interpolant).
    [[nodiscard]] double value_gap_bound() const noexcept { return value_gap_; }
    /// Upper bound on sup |Psi' - C'|.
    [[nodiscard]] double slope_gap_bound() const noexcept { return slope_gap_; }
    /// Upper bound on sup |Psi_aff - piecewise linear| for the affine FIF.
    [[nodiscard]] double affine_gap_bound() const noexcept { return affine_gap_; }

    [[nodiscard]] bool in_domain(double x) const noexcept {
        return x >= part_.x_first && x <= part_.x_last;
    }

    friend bool operator==(const FifModel&, const FifModel&) = default;

private:
    explicit FifModel(DataSet data) : data_(std::move(data)) {}
    friend FifModel build_model(const DataSet& data, const IfsParams& params);

    DataSet data_;
    Partition part_;
    IfsParams params_;
    std::vector<RationalCubic> pieces_;
    std::vector<RationalCubic> classical_;
    double alpha_max_ = 0.0;
    double slope_contraction_ = 0.0;
    double value_gap_ = 0.0;
    double slope_gap_ = 0.0;
    double affine_gap_ = 0.0;
};

inline FifModel build_model(const DataSet& data, const IfsParams& params) {
    const std::size_t n = data.intervals();
    if (!data.has_derivatives()) {
        throw Error(Errc::MissingDerivatives,
                    "model construction needs derivative values (supply or estimate them)");
    }
    if (params.alpha.size() != n || params.u.size() != n || params.v.size() != n) {
        throw Error(Errc::LengthMismatch, "parameter vectors must have one entry per interval (" +
                                              std::to_string(n) + ")");
    }
    if (!(params.kappa >= 0.0 && params.kappa < 1.0)) {
        throw Error(Errc::InvalidArgument, "kappa must lie in [0, 1)");
    }
    FifModel m(data);
    m.part_ = build_partition(data);
    m.params_ = params;
    for (std::size_t i = 0; i < n; ++i) {
        const double al = params.alpha[i];
        if (!std::isfinite(al) || std::abs(al) >= m.part_.a[i] ||
            std::abs(al) > params.kappa * m.part_.a[i]) {
            throw Error(Errc::ContractivityViolation,
                        "interval " + std::to_string(i + 1) + ": |alpha| = " +
                            std::to_string(std::abs(al)) + " exceeds kappa * a_i = " +
                            std::to_string(params.kappa * m.part_.a[i]));
        }
        if (!(params.u[i] > 0.0) || !std::isfinite(params.u[i])) {
            throw Error(Errc::NonPositiveU, "interval " + std::to_string(i + 1) + ": u must be > 0");
        }
        if (!(params.v[i] >= 0.0) || !std::isfinite(params.v[i])) {
            throw Error(Errc::NegativeV, "interval " + std::to_string(i + 1) + ": v must be >= 0");
        }
    }

    m.pieces_.reserve(n);
    m.classical_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        m.pieces_.push_back(make_piece(data, m.part_, i, params.alpha[i], params.u[i], params.v[i]));
        m.classical_.push_back(make_piece(data, m.part_, i, 0.0, params.u[i], params.v[i]));
        m.alpha_max_ = std::max(m.alpha_max_, std::abs(params.alpha[i]));
        m.slope_contraction_ =
            std::max(m.slope_contraction_, std::abs(params.alpha[i]) / m.part_.a[i]);
    }

    // Psi - C satisfies (Psi - C)(L_i x) = alpha_i (Psi - C)(x) + alpha_i (C - R_i)(x),
    // so sup|Psi - C| <= max_i |alpha_i| sup|C - R_i| / (1 - max|alpha|). The
    // derivative obeys the same relation scaled by 1/a_i.
    double c_sup = 0.0;
    double c_dsup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        c_sup = std::max(c_sup, m.classical_[i].abs_bound());
        c_dsup = std::max(c_dsup, m.classical_[i].abs_dbound() / m.part_.h[i]);
    }
    double value_num = 0.0;
    double slope_num = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double al = std::abs(params.alpha[i]);
        if (al == 0.0) continue;
        const RationalCubic r = make_endpoint_piece(data, m.part_, params.u[i], params.v[i]);
        value_num = std::max(value_num, al * (c_sup + r.abs_bound()));
        slope_num = std::max(slope_num,
                             al / m.part_.a[i] * (c_dsup + r.abs_dbound() / m.part_.width));
    }
    m.value_gap_ = value_num / (1.0 - m.alpha_max_);
    m.slope_gap_ = slope_num / (1.0 - m.slope_contraction_);

    const auto& y = data.values();
    double y_sup = 0.0;
    for (double v : y) y_sup = std::max(y_sup, std::abs(v));
    const double ends = std::max(std::abs(y.front()), std::abs(y.back()));
    m.affine_gap_ = m.alpha_max_ * (y_sup + ends) / (1.0 - m.alpha_max_);
    return m;
}

/// q_i(theta) = P_i(theta) / Q_i(theta) for 0-based interval i.
inline double eval_q(const FifModel& model, std::size_t i, double theta) {
    return model.pieces().at(i).value(theta);
}

/// dq_i/dx at the point with global parameter theta.
inline double eval_q_derivative(const FifModel& model, std::size_t i, double theta) {
    return model.pieces().at(i).dvalue(theta) / model.partition().width;
}

} // namespace rcsfif
