#ifndef AZITRACK_SCENARIO_HPP
#define AZITRACK_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "azitrack/circular.hpp"
#include "azitrack/tracker.hpp"

namespace azitrack {

// Piecewise-linear azimuth segment; interpolation follows the shortest
// circular arc between the endpoints.
struct Segment {
    double t0 = 0, az0 = 0, t1 = 0, az1 = 0;
};

struct Interval {
    double on = 0, off = 0;
};

struct SpeakerTrajectory {
    std::vector<Segment> segments;  // contiguous, covering [0, duration]
    std::vector<Interval> activity; // non-overlapping, within [0, duration]
};

struct TrajectorySpec {
    double duration = 0;
    std::vector<SpeakerTrajectory> speakers;
};

struct ObservationModel {
    double frame_rate = 62.5;    // frames per second
    int bins_per_frame = 16;
    double doa_noise_sigma = deg2rad(2.0);
    double outlier_rate = 0.0;
    double mask_fidelity = 0.95; // mean mask of the dominant speaker
    double mask_noise_sigma = 0.05;
    std::uint64_t seed = 0;
};

struct TruthPoint {
    WrappedAngle az;
    bool active = false;
};

// truth[frame][speaker]
using TruthTable = std::vector<std::vector<TruthPoint>>;

struct GeneratedScenario {
    std::vector<Observation> observations;
    TruthTable truth;
};

// Per-speaker (azimuth, active) at time t. Throws for t outside [0, duration].
std::vector<TruthPoint> truth_at(const TrajectorySpec& spec, double t);

// Draw one dominant speaker per bin among the active ones, add DOA noise and
// outliers, and synthesize masks around mask_fidelity. Deterministic per seed.
GeneratedScenario generate(const TrajectorySpec& spec, const ObservationModel& model);

struct ScenarioPreset {
    TrajectorySpec trajectory;
    ObservationModel obs_model;
};

// Named presets: "crossing", "static_far". Throws ValidationError otherwise.
ScenarioPreset preset(const std::string& name);
std::vector<std::string> preset_names();

} // namespace azitrack

#endif
