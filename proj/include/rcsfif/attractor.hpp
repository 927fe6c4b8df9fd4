#pragma once

// Deterministic materialization of the attractor: repeatedly apply
// (x, y, y') -> (L_i x, alpha_i y + q_i(x), (alpha_i y' + q_i'(x)) / a_i)
// to the current point set, starting from the knot triples. Every level
// contains the previous one, and all returned values are exact up to roundoff.

#include "rcsfif/error.hpp"
#include "rcsfif/model.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace rcsfif {

struct Sample {
    double x = 0.0;
    double y = 0.0;
    double dy = 0.0;

    friend bool operator==(const Sample&, const Sample&) = default;
};

struct SampleSet {
    std::vector<Sample> points;  ///< sorted by x, no duplicates
    int depth = 0;
    double error_bound = 0.0;    ///< pointwise error of the stored values (exact sampling)

    friend bool operator==(const SampleSet&, const SampleSet&) = default;
};

inline constexpr std::size_t kDefaultMaxSamples = 2'000'000;

/// Number of points produced at the given depth: n_{k+1} = (N-1)(n_k - 1) + 1.
inline std::size_t attractor_size(std::size_t knots, int depth) {
    std::size_t n = knots;
    for (int k = 0; k < depth; ++k) n = (knots - 1) * (n - 1) + 1;
    return n;
}

/// Deepest level whose sample count stays within max_samples.
inline int max_attractor_depth(std::size_t knots, std::size_t max_samples = kDefaultMaxSamples) {
    int depth = 0;
    std::size_t n = knots;
    while (true) {
        const std::size_t next = (knots - 1) * (n - 1) + 1;
        if (next > max_samples || next < n) return depth;
        n = next;
        ++depth;
    }
}

inline SampleSet sample_attractor(const FifModel& model, int depth,
                                  std::size_t max_samples = kDefaultMaxSamples) {
    const auto& data = model.data();
    const std::size_t n_knots = data.size();
    if (depth < 0) throw Error(Errc::InvalidArgument, "depth must be non-negative");
    const int cap = max_attractor_depth(n_knots, max_samples);
    if (depth > cap) {
        throw Error(Errc::DepthTooLarge, "depth " + std::to_string(depth) +
                                             " exceeds the cap of " + std::to_string(cap) +
                                             " for " + std::to_string(n_knots) + " knots");
    }

    const auto& part = model.partition();
    const std::size_t n_maps = model.intervals();
    std::vector<Sample> current(n_knots);
    for (std::size_t j = 0; j < n_knots; ++j) current[j] = {data.x(j), data.y(j), data.d(j)};

    std::vector<Sample> next;
    for (int level = 0; level < depth; ++level) {
        next.clear();
        next.reserve(n_maps * (current.size() - 1) + 1);
        for (std::size_t i = 0; i < n_maps; ++i) {
            const auto& piece = model.pieces()[i];
            const double al = model.alpha(i);
            const double a = part.a[i];
            // The image of x_N under L_i is the first point of L_{i+1}'s image.
            const std::size_t count = i + 1 < n_maps ? current.size() - 1 : current.size();
            for (std::size_t j = 0; j < count; ++j) {
                const Sample& s = current[j];
                if (j == 0) {
                    next.push_back({data.x(i), data.y(i), data.d(i)});
                    continue;
                }
                if (j + 1 == current.size()) {
                    next.push_back({data.x(i + 1), data.y(i + 1), data.d(i + 1)});
                    continue;
                }
                const double t = (s.x - part.x_first) / part.width;
                const auto q = piece.eval(t);
                next.push_back({data.x(i) + part.h[i] * t, al * s.y + q.value,
                                (al * s.dy + q.dvalue / part.width) / a});
            }
        }
        current.swap(next);
    }
    return SampleSet{std::move(current), depth, 0.0};
}

} // namespace rcsfif
