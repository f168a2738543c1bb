#include "azitrack/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace azitrack {

namespace {

std::size_t overlap_frames(const TrackResult& tracks, const TruthTable& truth) {
    return std::min(tracks.points.size(), truth.size());
}

void check_counts(const TrackResult& tracks, const TruthTable& truth) {
    if (truth.empty() || tracks.points.empty()) {
        throw ValidationError("metrics: empty tracks or truth");
    }
    if (std::size_t(tracks.num_speakers) != truth.front().size()) {
        throw ValidationError("metrics: track count != speaker count");
    }
}

} // namespace

std::vector<int> assign_tracks(const TrackResult& tracks, const TruthTable& truth,
                               bool eval_silent) {
    check_counts(tracks, truth);
    const int q_count = tracks.num_speakers;
    const std::size_t frames = overlap_frames(tracks, truth);

    std::vector<int> perm(q_count);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best = perm;
    double best_cost = std::numeric_limits<double>::infinity();
    do {
        double cost = 0.0;
        for (std::size_t f = 0; f < frames; ++f) {
            for (int track = 0; track < q_count; ++track) {
                const int spk = perm[track];
                if (!truth[f][spk].active && !eval_silent) continue;
                cost += std::abs(ang_diff(tracks.points[f][track].az, truth[f][spk].az));
            }
        }
        if (cost < best_cost) {
            best_cost = cost;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

double rlmae(const TrackResult& tracks, const TruthTable& truth,
             const std::vector<int>& assignment, bool eval_silent) {
    check_counts(tracks, truth);
    if (assignment.size() != std::size_t(tracks.num_speakers)) {
        throw ValidationError("rlmae: bad assignment size");
    }
    const std::size_t frames = overlap_frames(tracks, truth);

    double total = 0.0;
    long count = 0;
    for (std::size_t f = 0; f < frames; ++f) {
        for (int track = 0; track < tracks.num_speakers; ++track) {
            const int spk = assignment[track];
            if (!truth[f][spk].active && !eval_silent) continue;
            total += std::abs(ang_diff(tracks.points[f][track].az, truth[f][spk].az));
            ++count;
        }
    }
    if (count == 0) throw MetricUndefinedError("rlmae: no active frames to evaluate");
    return rad2deg(total / double(count));
}

int identity_switches(const TrackResult& tracks, const TruthTable& truth,
                      const std::vector<int>& assignment, int persistence) {
    check_counts(tracks, truth);
    const int q_count = tracks.num_speakers;
    const std::size_t frames = overlap_frames(tracks, truth);

    int events = 0;
    for (int track = 0; track < q_count; ++track) {
        int run_label = -1;
        int run_len = 0;
        bool run_counted = false;
        for (std::size_t f = 0; f < frames; ++f) {
            // label = nearest active true speaker this frame
            int label = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int spk = 0; spk < q_count; ++spk) {
                if (!truth[f][spk].active) continue;
                const double d =
                    std::abs(ang_diff(tracks.points[f][track].az, truth[f][spk].az));
                if (d < best) {
                    best = d;
                    label = spk;
                }
            }
            if (label < 0) continue; // no active speaker: run persists across gaps

            if (label != run_label) {
                run_label = label;
                run_len = 0;
                run_counted = false;
            }
            ++run_len;
            if (run_label != assignment[track] && run_len >= persistence && !run_counted) {
                ++events;
                run_counted = true;
            }
        }
    }
    return events;
}

EvalReport evaluate(const TrackResult& tracks, const TruthTable& truth,
                    const EvalOptions& opts) {
    EvalReport report;
    report.assignment = assign_tracks(tracks, truth, opts.eval_silent);
    report.rlmae_deg = rlmae(tracks, truth, report.assignment, opts.eval_silent);
    report.identity_switches = identity_switches(tracks, truth, report.assignment, opts.persistence);

    const std::size_t frames = overlap_frames(tracks, truth);
    report.per_speaker_mae_deg.assign(tracks.num_speakers, 0.0);
    for (int track = 0; track < tracks.num_speakers; ++track) {
        const int spk = report.assignment[track];
        double total = 0.0;
        long count = 0;
        for (std::size_t f = 0; f < frames; ++f) {
            if (!truth[f][spk].active && !opts.eval_silent) continue;
            total += std::abs(ang_diff(tracks.points[f][track].az, truth[f][spk].az));
            ++count;
        }
        report.per_speaker_mae_deg[track] = (count > 0) ? rad2deg(total / double(count)) : 0.0;
        report.frames_evaluated += count;
    }
    return report;
}

} // namespace azitrack
