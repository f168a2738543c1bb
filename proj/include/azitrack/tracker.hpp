#ifndef AZITRACK_TRACKER_HPP
#define AZITRACK_TRACKER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "azitrack/assoc.hpp"
#include "azitrack/circular.hpp"
#include "azitrack/wkf.hpp"

namespace azitrack {

// One per-TF-bin DOA estimate with the per-speaker mask values for that bin.
struct Observation {
    int frame = 0;
    int bin = 0;
    WrappedAngle az;
    std::vector<double> masks;
};

enum class FrameBatch { Sequential, Frozen };

struct TrackerConfig {
    int num_speakers = 2;
    MotionModel motion;
    AssociationMode mode = AssociationMode::Joint;
    double t0 = 1.0;              // initialization window, seconds
    double init_cov_scale = 1e-4; // initial covariance = scale * I2
    double mask_floor = 1e-3;
    std::optional<double> gate_radius; // Mahalanobis gate; disabled by default
    std::uint64_t seed = 0;
    WrapMode wrap_mode = WrapMode::Soft;
    FrameBatch frame_batch = FrameBatch::Sequential;
};

struct TrackPoint {
    WrappedAngle az;
    double var = 0.0; // azimuth variance
};

struct FrameDiagnostics {
    int frame = 0;
    // (bin, beta vector) for every observation consumed this frame.
    std::vector<std::pair<int, std::vector<double>>> betas;
    int gated = 0; // observations rejected by the Mahalanobis gate
};

struct TrackResult {
    int num_speakers = 0;
    // points[frame][speaker]; frames run 0..last with no gaps.
    std::vector<std::vector<TrackPoint>> points;
    std::vector<FrameDiagnostics> diagnostics;
};

// Cluster the azimuths observed in the first t0 seconds into Q initial
// states (zero velocity, init_cov_scale * I2), speaker index ascending by
// center azimuth.
std::vector<SpeakerState> initialize(std::span<const Observation> observations,
                                     const TrackerConfig& config);

// Predict all speakers once, then apply the frame's observations
// sequentially in ascending bin order.
FrameDiagnostics step_frame(std::vector<SpeakerState>& states,
                            std::span<const Observation> frame_obs,
                            const TrackerConfig& config);

// Full pipeline: initialize on the t0 window, then step every frame from 0
// through the last observed frame. Deterministic for a fixed config.
TrackResult run(std::span<const Observation> observations,
                const TrackerConfig& config);

} // namespace azitrack

#endif
