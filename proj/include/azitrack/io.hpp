#ifndef AZITRACK_IO_HPP
#define AZITRACK_IO_HPP

#include <string>
#include <vector>

#include "azitrack/metrics.hpp"
#include "azitrack/scenario.hpp"
#include "azitrack/tracker.hpp"

namespace azitrack {

// Shortest decimal representation that round-trips the exact double.
std::string fmt_double(double v);

// Observations: JSONL, one {"t":..,"f":..,"az":..,"m":[..]} object per line,
// sorted by (t, f), az in [-pi, pi), masks in [0, 1].
std::vector<Observation> read_observations(const std::string& path);
void write_observations(const std::vector<Observation>& obs, const std::string& path);

// Ground truth: CSV "frame,speaker,az_rad,active".
TruthTable read_truth(const std::string& path);
void write_truth(const TruthTable& truth, const std::string& path);

// Tracks: CSV "frame,speaker,az_rad,var". Diagnostics go to a separate JSONL.
TrackResult read_tracks(const std::string& path);
void write_tracks(const TrackResult& result, const std::string& path);
void write_diagnostics(const TrackResult& result, const std::string& path);

// Evaluation report: JSON object.
EvalReport read_report(const std::string& path);
void write_report(const EvalReport& report, const std::string& path);

// Configs: JSON objects.
TrackerConfig read_tracker_config(const std::string& path);
void write_tracker_config(const TrackerConfig& config, const std::string& path);
ObservationModel read_obs_model(const std::string& path);
void write_obs_model(const ObservationModel& model, const std::string& path);
TrajectorySpec read_trajectory(const std::string& path);
void write_trajectory(const TrajectorySpec& spec, const std::string& path);

AssociationMode parse_mode(const std::string& name);
std::string mode_name(AssociationMode mode);

} // namespace azitrack

#endif
