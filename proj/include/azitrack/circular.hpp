#ifndef AZITRACK_CIRCULAR_HPP
#define AZITRACK_CIRCULAR_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "azitrack/common.hpp"

namespace azitrack {

// Azimuth canonicalized to [-pi, pi); pi maps to -pi.
struct WrappedAngle {
    double rad = 0.0;

    friend bool operator==(WrappedAngle a, WrappedAngle b) { return a.rad == b.rad; }
};

// Canonicalize a raw angle. Throws ValidationError on non-finite input.
WrappedAngle wrap(double raw);

// Shortest signed circular difference a - b, in [-pi, pi).
double ang_diff(WrappedAngle a, WrappedAngle b);

// Weighted circular mean. Throws ValidationError on empty input or bad
// weights, DegenerateMeanError when the resultant vector vanishes.
WrappedAngle circular_mean(std::span<const WrappedAngle> angles,
                           std::span<const double> weights = {});

// k-means on the circle with farthest-point seeding from `seed`.
// Deterministic for a fixed seed. Requires k <= number of distinct points.
std::vector<WrappedAngle> circular_kmeans(std::span<const WrappedAngle> points,
                                          std::size_t k, std::uint64_t seed,
                                          int max_iters = 100);

} // namespace azitrack

#endif
