#pragma once

// Hermite interpolation data and the affine partition maps L_i(x) = a_i x + b_i
// that send the whole domain [x_1, x_N] onto the subinterval [x_i, x_{i+1}].

#include "rcsfif/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rcsfif {

struct RawPoint {
    double x = 0.0;
    double y = 0.0;
    std::optional<double> d;
};

class DataSet;
DataSet validate_dataset(std::span<const RawPoint> points);

/// Validated knots (strictly increasing, N >= 3) with values and optional slopes.
class DataSet {
public:
    [[nodiscard]] std::size_t size() const noexcept { return x_.size(); }
    [[nodiscard]] std::size_t intervals() const noexcept { return x_.size() - 1; }

    [[nodiscard]] const std::vector<double>& knots() const noexcept { return x_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return y_; }
    [[nodiscard]] bool has_derivatives() const noexcept { return d_.has_value(); }

    /// Throws MissingDerivatives when no slopes are attached.
    [[nodiscard]] const std::vector<double>& derivatives() const {
        if (!d_) {
            throw Error(Errc::MissingDerivatives, "data set carries no derivative values");
        }
        return *d_;
    }

    [[nodiscard]] double x(std::size_t i) const { return x_[i]; }
    [[nodiscard]] double y(std::size_t i) const { return y_[i]; }
    [[nodiscard]] double d(std::size_t i) const { return derivatives()[i]; }

    [[nodiscard]] double first_x() const noexcept { return x_.front(); }
    [[nodiscard]] double last_x() const noexcept { return x_.back(); }

    /// Copy of this data set with the given slopes attached (replacing any present).
    [[nodiscard]] DataSet with_derivatives(std::vector<double> d) const;

    /// Copy with values and slopes negated (reflection y -> -y).
    [[nodiscard]] DataSet reflected() const {
        DataSet out = *this;
        for (auto& v : out.y_) v = -v;
        if (out.d_) {
            for (auto& v : *out.d_) v = -v;
        }
        return out;
    }

    static DataSet from_columns(std::vector<double> x, std::vector<double> y,
                                std::optional<std::vector<double>> d = std::nullopt);

    friend bool operator==(const DataSet&, const DataSet&) = default;

private:
    DataSet() = default;
    friend DataSet validate_dataset(std::span<const RawPoint> points);

    std::vector<double> x_;
    std::vector<double> y_;
    std::optional<std::vector<double>> d_;
};

inline DataSet validate_dataset(std::span<const RawPoint> points) {
    if (points.size() < 3) {
        throw Error(Errc::TooFewPoints,
                    "need at least 3 knots, got " + std::to_string(points.size()));
    }
    DataSet out;
    out.x_.reserve(points.size());
    out.y_.reserve(points.size());
    bool all_d = true;
    for (const auto& p : points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || (p.d && !std::isfinite(*p.d))) {
            throw Error(Errc::NonFiniteValue, "non-finite coordinate in input");
        }
        all_d = all_d && p.d.has_value();
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i > 0 && !(points[i - 1].x < points[i].x)) {
            throw Error(Errc::NonIncreasingKnots,
                        "knot " + std::to_string(i) + " does not exceed its predecessor");
        }
        out.x_.push_back(points[i].x);
        out.y_.push_back(points[i].y);
    }
    if (all_d) {
        std::vector<double> d;
        d.reserve(points.size());
        for (const auto& p : points) d.push_back(*p.d);
        out.d_ = std::move(d);
    }
    return out;
}

inline DataSet DataSet::from_columns(std::vector<double> x, std::vector<double> y,
                                     std::optional<std::vector<double>> d) {
    if (x.size() != y.size() || (d && d->size() != x.size())) {
        throw Error(Errc::LengthMismatch, "knot, value and derivative columns differ in length");
    }
    std::vector<RawPoint> pts(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        pts[i] = RawPoint{x[i], y[i], d ? std::optional<double>((*d)[i]) : std::nullopt};
    }
    return validate_dataset(pts);
}

inline DataSet DataSet::with_derivatives(std::vector<double> d) const {
    if (d.size() != x_.size()) {
        throw Error(Errc::LengthMismatch, "derivative list length differs from knot count");
    }
    for (double v : d) {
        if (!std::isfinite(v)) throw Error(Errc::NonFiniteValue, "non-finite derivative");
    }
    DataSet out = *this;
    out.d_ = std::move(d);
    return out;
}

/// Per-interval quantities of the partition and the maps L_i.
struct Partition {
    std::vector<double> h;      ///< x_{i+1} - x_i
    std::vector<double> a;      ///< h_i / (x_N - x_1)
    std::vector<double> b;      ///< (x_N x_i - x_1 x_{i+1}) / (x_N - x_1)
    std::vector<double> slope;  ///< (y_{i+1} - y_i) / h_i
    double x_first = 0.0;
    double x_last = 0.0;
    double width = 0.0;         ///< x_N - x_1
    double h_max = 0.0;

    [[nodiscard]] std::size_t intervals() const noexcept { return h.size(); }

    [[nodiscard]] double map(std::size_t i, double x) const { return a[i] * x + b[i]; }

    friend bool operator==(const Partition&, const Partition&) = default;
};

inline Partition build_partition(const DataSet& data) {
    const auto& x = data.knots();
    const auto& y = data.values();
    const std::size_t n = data.intervals();
    Partition p;
    p.x_first = x.front();
    p.x_last = x.back();
    p.width = p.x_last - p.x_first;
    p.h.resize(n);
    p.a.resize(n);
    p.b.resize(n);
    p.slope.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.h[i] = x[i + 1] - x[i];
        p.a[i] = p.h[i] / p.width;
        p.b[i] = (p.x_last * x[i] - p.x_first * x[i + 1]) / p.width;
        p.slope[i] = (y[i + 1] - y[i]) / p.h[i];
        p.h_max = std::max(p.h_max, p.h[i]);
    }
    return p;
}

/// Interval index for x under half-open [x_i, x_{i+1}) with the last interval closed.
/// Caller guarantees x lies in [x_1, x_N].
inline std::size_t locate_interval(std::span<const double> knots, double x) {
    const auto it = std::upper_bound(knots.begin(), knots.end(), x);
    std::size_t idx = static_cast<std::size_t>(it - knots.begin());
    idx = idx == 0 ? 0 : idx - 1;
    return std::min(idx, knots.size() - 2);
}

/// Index of the knot equal to x, if any.
inline std::optional<std::size_t> find_knot(std::span<const double> knots, double x) {
    const auto it = std::lower_bound(knots.begin(), knots.end(), x);
    if (it != knots.end() && *it == x) return static_cast<std::size_t>(it - knots.begin());
    return std::nullopt;
}

/// Arithmetic-mean slope estimates: three-point weighted mean inside, quadratic
/// extrapolation at both ends.
inline std::vector<double> estimate_derivatives_amm(const DataSet& data) {
    if (data.has_derivatives()) {
        throw Error(Errc::DerivativesAlreadyPresent,
                    "data already has derivatives; drop them explicitly before estimating");
    }
    const Partition p = build_partition(data);
    const std::size_t n = data.size();
    const auto& h = p.h;
    const auto& s = p.slope;
    std::vector<double> d(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        d[i] = (h[i] * s[i - 1] + h[i - 1] * s[i]) / (h[i - 1] + h[i]);
    }
    d[0] = s[0] + (s[0] - s[1]) * h[0] / (h[0] + h[1]);
    d[n - 1] = s[n - 2] + (s[n - 2] - s[n - 3]) * h[n - 2] / (h[n - 3] + h[n - 2]);
    return d;
}

/// Data set with slopes replaced by arithmetic-mean estimates.
inline DataSet with_estimated_derivatives(const DataSet& data) {
    const DataSet bare = DataSet::from_columns(data.knots(), data.values());
    return bare.with_derivatives(estimate_derivatives_amm(bare));
}

} // namespace rcsfif
