#include "azitrack/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace azitrack {

namespace {

void validate_spec(const TrajectorySpec& spec) {
    if (spec.duration <= 0.0) throw ValidationError("scenario: duration must be positive");
    if (spec.speakers.empty()) throw ValidationError("scenario: no speakers");
    for (const auto& sp : spec.speakers) {
        if (sp.segments.empty()) throw ValidationError("scenario: speaker without segments");
        if (sp.segments.front().t0 != 0.0 ||
            sp.segments.back().t1 < spec.duration) {
            throw ValidationError("scenario: segments must cover [0, duration]");
        }
        for (std::size_t i = 1; i < sp.segments.size(); ++i) {
            if (sp.segments[i].t0 != sp.segments[i - 1].t1) {
                throw ValidationError("scenario: segments must be contiguous");
            }
        }
        for (const auto& iv : sp.activity) {
            if (iv.on < 0.0 || iv.off > spec.duration || iv.off <= iv.on) {
                throw ValidationError("scenario: bad activity interval");
            }
        }
    }
}

WrappedAngle interp(const Segment& seg, double t) {
    const double span = seg.t1 - seg.t0;
    const double u = (span > 0.0) ? (t - seg.t0) / span : 0.0;
    const double arc = ang_diff(wrap(seg.az1), wrap(seg.az0));
    return wrap(seg.az0 + u * arc);
}

} // namespace

std::vector<TruthPoint> truth_at(const TrajectorySpec& spec, double t) {
    validate_spec(spec);
    if (t < 0.0 || t > spec.duration) {
        throw ValidationError("truth_at: t outside [0, duration]");
    }
    std::vector<TruthPoint> out;
    out.reserve(spec.speakers.size());
    for (const auto& sp : spec.speakers) {
        const Segment* seg = &sp.segments.back();
        for (const auto& s : sp.segments) {
            if (t >= s.t0 && t <= s.t1) {
                seg = &s;
                break;
            }
        }
        bool active = false;
        for (const auto& iv : sp.activity) {
            if (t >= iv.on && t <= iv.off) {
                active = true;
                break;
            }
        }
        out.push_back(TruthPoint{interp(*seg, t), active});
    }
    return out;
}

GeneratedScenario generate(const TrajectorySpec& spec, const ObservationModel& model) {
    validate_spec(spec);
    if (model.frame_rate <= 0.0) throw ValidationError("generate: frame_rate must be positive");
    if (model.bins_per_frame < 1) throw ValidationError("generate: bins_per_frame must be >= 1");
    if (model.doa_noise_sigma <= 0.0) throw ValidationError("generate: doa_noise_sigma must be positive");
    if (model.outlier_rate < 0.0 || model.outlier_rate > 1.0) {
        throw ValidationError("generate: outlier_rate outside [0,1]");
    }
    if (model.mask_fidelity < 0.5 || model.mask_fidelity > 1.0) {
        throw ValidationError("generate: mask_fidelity must be in [0.5, 1]");
    }
    if (model.mask_noise_sigma < 0.0) throw ValidationError("generate: negative mask_noise_sigma");

    const int q_count = int(spec.speakers.size());
    const int num_frames = int(std::floor(spec.duration * model.frame_rate)) + 1;

    std::mt19937_64 rng(model.seed);
    std::normal_distribution<double> doa_noise(0.0, model.doa_noise_sigma);
    std::normal_distribution<double> mask_noise(0.0, model.mask_noise_sigma);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> full_circle(-kPi, kPi);

    GeneratedScenario out;
    out.truth.reserve(num_frames);

    bool any_active = false;
    for (int frame = 0; frame < num_frames; ++frame) {
        const double t = std::min(double(frame) / model.frame_rate, spec.duration);
        auto truth = truth_at(spec, t);

        std::vector<int> active;
        for (int q = 0; q < q_count; ++q) {
            if (truth[q].active) active.push_back(q);
        }
        if (!active.empty()) any_active = true;

        for (int bin = 0; bin < model.bins_per_frame && !active.empty(); ++bin) {
            std::uniform_int_distribution<std::size_t> pick(0, active.size() - 1);
            const int dom = active[pick(rng)];

            double az;
            if (model.outlier_rate > 0.0 && unit(rng) < model.outlier_rate) {
                az = full_circle(rng);
            } else {
                az = truth[dom].az.rad + doa_noise(rng);
            }

            double m = model.mask_fidelity;
            if (model.mask_noise_sigma > 0.0) m += mask_noise(rng);
            m = std::clamp(m, 0.0, 1.0);

            std::vector<double> masks(q_count);
            for (int q = 0; q < q_count; ++q) {
                masks[q] = (q == dom) ? m : (1.0 - m) / double(q_count - 1);
            }
            if (q_count == 1) masks[0] = m;

            out.observations.push_back(Observation{frame, bin, wrap(az), std::move(masks)});
        }
        out.truth.push_back(std::move(truth));
    }

    if (!any_active) throw ValidationError("generate: no active speaker in the entire scenario");
    return out;
}

ScenarioPreset preset(const std::string& name) {
    ScenarioPreset p;
    if (name == "crossing") {
        // Two speakers converge, hold almost coincident long enough for
        // velocity memory to decay, swap sides during a mutual silence gap,
        // hold again, then depart. This is the configuration where
        // spatial-only association flips identities.
        p.trajectory.duration = 20.0;
        SpeakerTrajectory a;
        a.segments = {{0.0, -1.0, 6.0, -0.02},
                      {6.0, -0.02, 9.5, -0.02},
                      {9.5, -0.02, 10.5, 0.02},
                      {10.5, 0.02, 14.0, 0.02},
                      {14.0, 0.02, 20.0, 1.0}};
        a.activity = {{0.0, 9.2}, {10.8, 20.0}};
        SpeakerTrajectory b;
        b.segments = {{0.0, 1.0, 6.0, 0.02},
                      {6.0, 0.02, 9.5, 0.02},
                      {9.5, 0.02, 10.5, -0.02},
                      {10.5, -0.02, 14.0, -0.02},
                      {14.0, -0.02, 20.0, -1.0}};
        b.activity = {{0.0, 9.2}, {10.8, 20.0}};
        p.trajectory.speakers = {a, b};
        p.obs_model.mask_fidelity = 0.95;
        p.obs_model.mask_noise_sigma = 0.05;
        p.obs_model.doa_noise_sigma = deg2rad(2.0);
    } else if (name == "static_far") {
        // Two stationary speakers 90 degrees apart, always active.
        p.trajectory.duration = 20.0;
        SpeakerTrajectory a;
        a.segments = {{0.0, -kPi / 4.0, 20.0, -kPi / 4.0}};
        a.activity = {{0.0, 20.0}};
        SpeakerTrajectory b;
        b.segments = {{0.0, kPi / 4.0, 20.0, kPi / 4.0}};
        b.activity = {{0.0, 20.0}};
        p.trajectory.speakers = {a, b};
        p.obs_model.mask_fidelity = 0.9;
        p.obs_model.mask_noise_sigma = 0.05;
        p.obs_model.doa_noise_sigma = deg2rad(2.0);
    } else {
        throw ValidationError("unknown scenario preset: " + name);
    }
    return p;
}

std::vector<std::string> preset_names() { return {"crossing", "static_far"}; }

} // namespace azitrack
