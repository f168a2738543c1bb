#ifndef AZITRACK_SVG_HPP
#define AZITRACK_SVG_HPP

#include <string>
#include <vector>

#include "azitrack/scenario.hpp"
#include "azitrack/tracker.hpp"

namespace azitrack {

// Scatter of per-bin DOA estimates colored by the last speaker's mask value
// (blue = first speaker dominant, red = last), with ground-truth trajectories
// in grey and tracked trajectories overlaid.
void write_scenario_svg(const std::string& path, const std::vector<Observation>& obs,
                        const TruthTable& truth, const TrackResult* tracks,
                        const std::string& title = "");

} // namespace azitrack

#endif
