#include "azitrack/circular.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace azitrack {

WrappedAngle wrap(double raw) {
    if (!std::isfinite(raw)) {
        throw ValidationError("wrap: non-finite angle");
    }
    double r = std::remainder(raw, kTwoPi); // [-pi, pi]
    if (r >= kPi) r = -kPi;
    return WrappedAngle{r};
}

double ang_diff(WrappedAngle a, WrappedAngle b) {
    return wrap(a.rad - b.rad).rad;
}

WrappedAngle circular_mean(std::span<const WrappedAngle> angles,
                           std::span<const double> weights) {
    if (angles.empty()) {
        throw ValidationError("circular_mean: empty input");
    }
    if (!weights.empty() && weights.size() != angles.size()) {
        throw ValidationError("circular_mean: weight count mismatch");
    }
    double s = 0.0, c = 0.0, wsum = 0.0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const double w = weights.empty() ? 1.0 : weights[i];
        if (w < 0.0) throw ValidationError("circular_mean: negative weight");
        s += w * std::sin(angles[i].rad);
        c += w * std::cos(angles[i].rad);
        wsum += w;
    }
    if (wsum == 0.0) throw ValidationError("circular_mean: all weights zero");
    const double resultant = std::hypot(s, c) / wsum;
    if (resultant < 1e-9) {
        throw DegenerateMeanError("circular_mean: zero resultant vector");
    }
    return wrap(std::atan2(s, c));
}

namespace {

std::size_t nearest_center(WrappedAngle p, const std::vector<WrappedAngle>& centers) {
    std::size_t best = 0;
    double best_d = std::abs(ang_diff(p, centers[0]));
    for (std::size_t j = 1; j < centers.size(); ++j) {
        const double d = std::abs(ang_diff(p, centers[j]));
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    return best;
}

} // namespace

std::vector<WrappedAngle> circular_kmeans(std::span<const WrappedAngle> points,
                                          std::size_t k, std::uint64_t seed,
                                          int max_iters) {
    if (points.empty()) throw ValidationError("circular_kmeans: empty input");
    if (k < 1) throw ValidationError("circular_kmeans: k must be >= 1");

    std::vector<double> distinct;
    distinct.reserve(points.size());
    for (const auto& p : points) distinct.push_back(p.rad);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (k > distinct.size()) {
        throw ValidationError("circular_kmeans: k exceeds number of distinct points");
    }

    // Farthest-point seeding: random first center, then greedily the point
    // with the largest min-distance to the chosen set (ties to lowest index).
    std::mt19937_64 rng(seed);
    std::vector<WrappedAngle> centers;
    centers.reserve(k);
    std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
    centers.push_back(points[pick(rng)]);
    while (centers.size() < k) {
        std::size_t far_idx = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            double d = std::abs(ang_diff(points[i], centers[0]));
            for (std::size_t j = 1; j < centers.size(); ++j) {
                d = std::min(d, std::abs(ang_diff(points[i], centers[j])));
            }
            if (d > far_d) {
                far_d = d;
                far_idx = i;
            }
        }
        centers.push_back(points[far_idx]);
    }

    std::vector<std::size_t> assign(points.size(), 0);
    for (int iter = 0; iter < max_iters; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const std::size_t j = nearest_center(points[i], centers);
            if (j != assign[i]) {
                assign[i] = j;
                changed = true;
            }
        }
        if (!changed && iter > 0) break;
        for (std::size_t j = 0; j < k; ++j) {
            std::vector<WrappedAngle> members;
            for (std::size_t i = 0; i < points.size(); ++i) {
                if (assign[i] == j) members.push_back(points[i]);
            }
            if (members.empty()) continue; // keep previous center
            try {
                centers[j] = circular_mean(members);
            } catch (const DegenerateMeanError&) {
                // opposed members, keep previous center
            }
        }
        if (!changed) break;
    }
    return centers;
}

} // namespace azitrack
