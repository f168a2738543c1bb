#ifndef AZITRACK_METRICS_HPP
#define AZITRACK_METRICS_HPP

#include <vector>

#include "azitrack/scenario.hpp"
#include "azitrack/tracker.hpp"

namespace azitrack {

struct EvalOptions {
    bool eval_silent = false;  // include frames where the speaker is inactive
    int persistence = 25;      // frames a wrong label must persist to count
};

// Track-to-speaker bijection minimizing the total absolute circular error
// over active frames, exhaustive over all Q! permutations.
std::vector<int> assign_tracks(const TrackResult& tracks, const TruthTable& truth,
                               bool eval_silent = false);

// Recording-level mean absolute error, degrees.
double rlmae(const TrackResult& tracks, const TruthTable& truth,
             const std::vector<int>& assignment, bool eval_silent = false);

// Persistent identity-switch events: a track whose nearest active true
// speaker differs from its assigned speaker for >= persistence frames.
int identity_switches(const TrackResult& tracks, const TruthTable& truth,
                      const std::vector<int>& assignment, int persistence = 25);

struct EvalReport {
    std::vector<int> assignment; // track -> speaker
    double rlmae_deg = 0.0;
    std::vector<double> per_speaker_mae_deg;
    int identity_switches = 0;
    long frames_evaluated = 0;
};

EvalReport evaluate(const TrackResult& tracks, const TruthTable& truth,
                    const EvalOptions& opts = {});

} // namespace azitrack

#endif
