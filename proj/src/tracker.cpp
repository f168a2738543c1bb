#include "azitrack/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace azitrack {

std::vector<SpeakerState> initialize(std::span<const Observation> observations,
                                     const TrackerConfig& config) {
    const int q_count = config.num_speakers;
    if (q_count < 1) throw ValidationError("initialize: num_speakers must be >= 1");
    if (config.t0 <= 0.0) throw ValidationError("initialize: t0 must be positive");

    std::vector<WrappedAngle> window;
    for (const auto& obs : observations) {
        if (double(obs.frame) * config.motion.dt < config.t0) {
            window.push_back(obs.az);
        }
    }
    if (window.empty()) {
        throw InitializationError("initialize: no observations in the first " +
                                  std::to_string(config.t0) + " s window");
    }

    std::vector<WrappedAngle> centers;
    try {
        centers = circular_kmeans(window, std::size_t(q_count), config.seed);
    } catch (const ValidationError&) {
        throw InitializationError(
            "initialize: fewer than " + std::to_string(q_count) +
            " distinct azimuths in the first " + std::to_string(config.t0) + " s window");
    }
    std::sort(centers.begin(), centers.end(),
              [](WrappedAngle a, WrappedAngle b) { return a.rad < b.rad; });

    std::vector<SpeakerState> states(q_count);
    for (int q = 0; q < q_count; ++q) {
        states[q].az = centers[q].rad;
        states[q].vel = 0.0;
        states[q].cov = Mat2::identity(config.init_cov_scale);
    }
    return states;
}

FrameDiagnostics step_frame(std::vector<SpeakerState>& states,
                            std::span<const Observation> frame_obs,
                            const TrackerConfig& config) {
    const std::size_t q_count = states.size();
    FrameDiagnostics diag;

    for (auto& s : states) s = predict(s, config.motion);

    std::vector<const Observation*> ordered;
    ordered.reserve(frame_obs.size());
    for (const auto& obs : frame_obs) ordered.push_back(&obs);
    if (!ordered.empty()) {
        diag.frame = ordered.front()->frame;
        for (const auto* obs : ordered) {
            if (obs->frame != diag.frame) {
                throw ValidationError("step_frame: observations from mixed frames");
            }
        }
        std::sort(ordered.begin(), ordered.end(),
                  [](const Observation* a, const Observation* b) { return a->bin < b->bin; });
    }

    // Frozen mode scores every observation against the post-predict states;
    // sequential mode scores against the partially updated states.
    const std::vector<SpeakerState> frozen = states;

    for (const auto* obs : ordered) {
        if (obs->masks.size() != q_count) {
            throw ValidationError("step_frame: mask vector length != num_speakers");
        }
        const std::vector<SpeakerState>& ref =
            (config.frame_batch == FrameBatch::Frozen) ? frozen : states;

        std::vector<Innovation> innov(q_count);
        std::vector<double> likelihoods(q_count);
        for (std::size_t q = 0; q < q_count; ++q) {
            innov[q] = innovation(ref[q], obs->az, config.motion, config.wrap_mode);
            likelihoods[q] = innov[q].likelihood;
        }

        if (config.gate_radius) {
            bool inside = false;
            const double gate2 = *config.gate_radius * *config.gate_radius;
            for (std::size_t q = 0; q < q_count; ++q) {
                if (innov[q].g * innov[q].g / innov[q].S <= gate2) {
                    inside = true;
                    break;
                }
            }
            if (!inside) {
                ++diag.gated;
                continue;
            }
        }

        const auto detect = detection_probabilities(obs->masks, config.mode, config.mask_floor);
        const auto assoc = association_probabilities(likelihoods, detect, config.mode);
        for (std::size_t q = 0; q < q_count; ++q) {
            states[q] = update(states[q], innov[q].g, innov[q].S, assoc.beta[q], config.motion);
        }
        diag.betas.emplace_back(obs->bin, assoc.beta);
    }
    return diag;
}

TrackResult run(std::span<const Observation> observations,
                const TrackerConfig& config) {
    for (std::size_t i = 1; i < observations.size(); ++i) {
        const auto& a = observations[i - 1];
        const auto& b = observations[i];
        if (b.frame < a.frame || (b.frame == a.frame && b.bin <= a.bin)) {
            throw ValidationError("run: observation stream not sorted by (frame, bin)");
        }
    }

    std::vector<SpeakerState> states = initialize(observations, config);

    const int last_frame = observations.empty() ? -1 : observations.back().frame;

    TrackResult result;
    result.num_speakers = config.num_speakers;
    result.points.reserve(std::size_t(last_frame + 1));

    std::size_t cursor = 0;
    for (int frame = 0; frame <= last_frame; ++frame) {
        std::size_t begin = cursor;
        while (cursor < observations.size() && observations[cursor].frame == frame) ++cursor;

        FrameDiagnostics diag =
            step_frame(states, observations.subspan(begin, cursor - begin), config);
        diag.frame = frame;

        std::vector<TrackPoint> row(config.num_speakers);
        for (int q = 0; q < config.num_speakers; ++q) {
            row[q].az = WrappedAngle{states[q].az};
            row[q].var = states[q].cov.a00;
        }
        result.points.push_back(std::move(row));
        result.diagnostics.push_back(std::move(diag));
    }
    return result;
}

} // namespace azitrack
