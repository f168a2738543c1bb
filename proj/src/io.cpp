#include "azitrack/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace azitrack {

using nlohmann::json;

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

[[noreturn]] void line_error(const std::string& path, std::size_t line, const std::string& msg) {
    throw ValidationError(path + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& path, std::size_t line, const std::string& field,
                    const std::string& text) {
    double v = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) {
        line_error(path, line, "bad value for field \"" + field + "\": " + text);
    }
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

} // namespace

std::string fmt_double(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw IoError("fmt_double: conversion failed");
    return std::string(buf, ptr);
}

std::vector<Observation> read_observations(const std::string& path) {
    auto in = open_in(path);
    std::vector<Observation> out;
    std::string line;
    std::size_t lineno = 0;
    std::size_t mask_len = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            line_error(path, lineno, std::string("JSON parse error: ") + e.what());
        }
        for (const char* key : {"t", "f", "az", "m"}) {
            if (!j.contains(key)) line_error(path, lineno, std::string("missing field \"") + key + "\"");
        }
        Observation obs;
        obs.frame = j["t"].get<int>();
        obs.bin = j["f"].get<int>();
        const double az = j["az"].get<double>();
        if (obs.frame < 0) line_error(path, lineno, "field \"t\" must be >= 0");
        if (obs.bin < 0) line_error(path, lineno, "field \"f\" must be >= 0");
        if (!(az >= -kPi && az < kPi)) {
            line_error(path, lineno, "field \"az\" outside [-pi, pi): " + fmt_double(az));
        }
        obs.az = WrappedAngle{az};
        for (const auto& m : j["m"]) {
            const double v = m.get<double>();
            if (v < 0.0 || v > 1.0) {
                line_error(path, lineno, "field \"m\" entry outside [0, 1]: " + fmt_double(v));
            }
            obs.masks.push_back(v);
        }
        if (obs.masks.empty()) line_error(path, lineno, "field \"m\" must be non-empty");
        if (mask_len == 0) {
            mask_len = obs.masks.size();
        } else if (obs.masks.size() != mask_len) {
            line_error(path, lineno, "mask vector length changed mid-stream");
        }
        if (!out.empty()) {
            const auto& prev = out.back();
            if (obs.frame < prev.frame ||
                (obs.frame == prev.frame && obs.bin < prev.bin)) {
                line_error(path, lineno, "stream not sorted by (t, f)");
            }
            if (obs.frame == prev.frame && obs.bin == prev.bin) {
                line_error(path, lineno, "duplicate (t, f) bin");
            }
        }
        out.push_back(std::move(obs));
    }
    return out;
}

void write_observations(const std::vector<Observation>& obs, const std::string& path) {
    auto out = open_out(path);
    for (const auto& o : obs) {
        out << "{\"t\":" << o.frame << ",\"f\":" << o.bin
            << ",\"az\":" << fmt_double(o.az.rad) << ",\"m\":[";
        for (std::size_t q = 0; q < o.masks.size(); ++q) {
            if (q) out << ',';
            out << fmt_double(o.masks[q]);
        }
        out << "]}\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

TruthTable read_truth(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw ValidationError(path + ": missing CSV header");
    ++lineno;
    if (line != "frame,speaker,az_rad,active") {
        line_error(path, lineno, "unexpected header: " + line);
    }
    TruthTable truth;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 4) line_error(path, lineno, "expected 4 columns");
        const int frame = int(parse_double(path, lineno, "frame", cells[0]));
        const int spk = int(parse_double(path, lineno, "speaker", cells[1]));
        const double az = parse_double(path, lineno, "az_rad", cells[2]);
        const int active = int(parse_double(path, lineno, "active", cells[3]));
        if (frame < 0 || spk < 0) line_error(path, lineno, "negative frame or speaker");
        if (std::size_t(frame) >= truth.size()) truth.resize(frame + 1);
        if (std::size_t(spk) >= truth[frame].size()) truth[frame].resize(spk + 1);
        truth[frame][spk] = TruthPoint{wrap(az), active != 0};
    }
    return truth;
}

void write_truth(const TruthTable& truth, const std::string& path) {
    auto out = open_out(path);
    out << "frame,speaker,az_rad,active\n";
    for (std::size_t f = 0; f < truth.size(); ++f) {
        for (std::size_t q = 0; q < truth[f].size(); ++q) {
            out << f << ',' << q << ',' << fmt_double(truth[f][q].az.rad) << ','
                << (truth[f][q].active ? 1 : 0) << '\n';
        }
    }
    if (!out) throw IoError("write failed: " + path);
}

TrackResult read_tracks(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw ValidationError(path + ": missing CSV header");
    ++lineno;
    if (line != "frame,speaker,az_rad,var") {
        line_error(path, lineno, "unexpected header: " + line);
    }
    TrackResult result;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 4) line_error(path, lineno, "expected 4 columns");
        const int frame = int(parse_double(path, lineno, "frame", cells[0]));
        const int spk = int(parse_double(path, lineno, "speaker", cells[1]));
        const double az = parse_double(path, lineno, "az_rad", cells[2]);
        const double var = parse_double(path, lineno, "var", cells[3]);
        if (frame < 0 || spk < 0) line_error(path, lineno, "negative frame or speaker");
        if (std::size_t(frame) >= result.points.size()) result.points.resize(frame + 1);
        if (std::size_t(spk) >= result.points[frame].size()) result.points[frame].resize(spk + 1);
        result.points[frame][spk] = TrackPoint{WrappedAngle{az}, var};
        result.num_speakers = std::max(result.num_speakers, spk + 1);
    }
    return result;
}

void write_tracks(const TrackResult& result, const std::string& path) {
    auto out = open_out(path);
    out << "frame,speaker,az_rad,var\n";
    for (std::size_t f = 0; f < result.points.size(); ++f) {
        for (std::size_t q = 0; q < result.points[f].size(); ++q) {
            out << f << ',' << q << ',' << fmt_double(result.points[f][q].az.rad) << ','
                << fmt_double(result.points[f][q].var) << '\n';
        }
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_diagnostics(const TrackResult& result, const std::string& path) {
    auto out = open_out(path);
    for (const auto& d : result.diagnostics) {
        for (const auto& [bin, beta] : d.betas) {
            out << "{\"t\":" << d.frame << ",\"f\":" << bin << ",\"beta\":[";
            for (std::size_t q = 0; q < beta.size(); ++q) {
                if (q) out << ',';
                out << fmt_double(beta[q]);
            }
            out << "]}\n";
        }
    }
    if (!out) throw IoError("write failed: " + path);
}

EvalReport read_report(const std::string& path) {
    auto in = open_in(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError(path + ": JSON parse error: " + e.what());
    }
    EvalReport r;
    r.assignment = j.at("assignment").get<std::vector<int>>();
    r.rlmae_deg = j.at("rlmae_deg").get<double>();
    r.per_speaker_mae_deg = j.at("per_speaker_mae_deg").get<std::vector<double>>();
    r.identity_switches = j.at("identity_switches").get<int>();
    r.frames_evaluated = j.at("frames_evaluated").get<long>();
    return r;
}

void write_report(const EvalReport& report, const std::string& path) {
    auto out = open_out(path);
    out << "{\n  \"assignment\": [";
    for (std::size_t i = 0; i < report.assignment.size(); ++i) {
        if (i) out << ", ";
        out << report.assignment[i];
    }
    out << "],\n  \"rlmae_deg\": " << fmt_double(report.rlmae_deg)
        << ",\n  \"per_speaker_mae_deg\": [";
    for (std::size_t i = 0; i < report.per_speaker_mae_deg.size(); ++i) {
        if (i) out << ", ";
        out << fmt_double(report.per_speaker_mae_deg[i]);
    }
    out << "],\n  \"identity_switches\": " << report.identity_switches
        << ",\n  \"frames_evaluated\": " << report.frames_evaluated << "\n}\n";
    if (!out) throw IoError("write failed: " + path);
}

AssociationMode parse_mode(const std::string& name) {
    if (name == "spatial") return AssociationMode::Spatial;
    if (name == "spectral") return AssociationMode::Spectral;
    if (name == "joint") return AssociationMode::Joint;
    throw ValidationError("unknown association mode: " + name);
}

std::string mode_name(AssociationMode mode) {
    switch (mode) {
    case AssociationMode::Spatial: return "spatial";
    case AssociationMode::Spectral: return "spectral";
    case AssociationMode::Joint: return "joint";
    }
    throw ValidationError("bad association mode");
}

TrackerConfig read_tracker_config(const std::string& path) {
    auto in = open_in(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError(path + ": JSON parse error: " + e.what());
    }
    TrackerConfig c;
    c.num_speakers = j.value("num_speakers", c.num_speakers);
    c.motion.dt = j.value("dt", c.motion.dt);
    c.motion.q_accel = j.value("q_accel", c.motion.q_accel);
    c.motion.r_obs = j.value("r_obs", c.motion.r_obs);
    if (j.contains("mode")) c.mode = parse_mode(j["mode"].get<std::string>());
    c.t0 = j.value("t0", c.t0);
    c.init_cov_scale = j.value("init_cov_scale", c.init_cov_scale);
    c.mask_floor = j.value("mask_floor", c.mask_floor);
    if (j.contains("gate_radius") && !j["gate_radius"].is_null()) {
        c.gate_radius = j["gate_radius"].get<double>();
    }
    c.seed = j.value("seed", c.seed);
    if (j.contains("wrap_mode")) {
        const auto w = j["wrap_mode"].get<std::string>();
        if (w == "soft") c.wrap_mode = WrapMode::Soft;
        else if (w == "hard") c.wrap_mode = WrapMode::Hard;
        else throw ValidationError(path + ": wrap_mode must be \"soft\" or \"hard\"");
    }
    if (j.contains("frame_batch")) {
        const auto b = j["frame_batch"].get<std::string>();
        if (b == "sequential") c.frame_batch = FrameBatch::Sequential;
        else if (b == "frozen") c.frame_batch = FrameBatch::Frozen;
        else throw ValidationError(path + ": frame_batch must be \"sequential\" or \"frozen\"");
    }
    return c;
}

void write_tracker_config(const TrackerConfig& c, const std::string& path) {
    json j;
    j["num_speakers"] = c.num_speakers;
    j["dt"] = c.motion.dt;
    j["q_accel"] = c.motion.q_accel;
    j["r_obs"] = c.motion.r_obs;
    j["mode"] = mode_name(c.mode);
    j["t0"] = c.t0;
    j["init_cov_scale"] = c.init_cov_scale;
    j["mask_floor"] = c.mask_floor;
    if (c.gate_radius) j["gate_radius"] = *c.gate_radius;
    else j["gate_radius"] = nullptr;
    j["seed"] = c.seed;
    j["wrap_mode"] = (c.wrap_mode == WrapMode::Hard) ? "hard" : "soft";
    j["frame_batch"] = (c.frame_batch == FrameBatch::Frozen) ? "frozen" : "sequential";
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

ObservationModel read_obs_model(const std::string& path) {
    auto in = open_in(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError(path + ": JSON parse error: " + e.what());
    }
    ObservationModel m;
    m.frame_rate = j.value("frame_rate", m.frame_rate);
    m.bins_per_frame = j.value("bins_per_frame", m.bins_per_frame);
    m.doa_noise_sigma = j.value("doa_noise_sigma", m.doa_noise_sigma);
    m.outlier_rate = j.value("outlier_rate", m.outlier_rate);
    m.mask_fidelity = j.value("mask_fidelity", m.mask_fidelity);
    m.mask_noise_sigma = j.value("mask_noise_sigma", m.mask_noise_sigma);
    m.seed = j.value("seed", m.seed);
    return m;
}

void write_obs_model(const ObservationModel& m, const std::string& path) {
    json j;
    j["frame_rate"] = m.frame_rate;
    j["bins_per_frame"] = m.bins_per_frame;
    j["doa_noise_sigma"] = m.doa_noise_sigma;
    j["outlier_rate"] = m.outlier_rate;
    j["mask_fidelity"] = m.mask_fidelity;
    j["mask_noise_sigma"] = m.mask_noise_sigma;
    j["seed"] = m.seed;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

TrajectorySpec read_trajectory(const std::string& path) {
    auto in = open_in(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError(path + ": JSON parse error: " + e.what());
    }
    TrajectorySpec spec;
    spec.duration = j.at("duration").get<double>();
    for (const auto& js : j.at("speakers")) {
        SpeakerTrajectory sp;
        for (const auto& seg : js.at("segments")) {
            sp.segments.push_back(Segment{seg.at(0).get<double>(), seg.at(1).get<double>(),
                                          seg.at(2).get<double>(), seg.at(3).get<double>()});
        }
        for (const auto& iv : js.at("activity")) {
            sp.activity.push_back(Interval{iv.at(0).get<double>(), iv.at(1).get<double>()});
        }
        spec.speakers.push_back(std::move(sp));
    }
    return spec;
}

void write_trajectory(const TrajectorySpec& spec, const std::string& path) {
    json j;
    j["duration"] = spec.duration;
    j["speakers"] = json::array();
    for (const auto& sp : spec.speakers) {
        json js;
        js["segments"] = json::array();
        for (const auto& s : sp.segments) js["segments"].push_back({s.t0, s.az0, s.t1, s.az1});
        js["activity"] = json::array();
        for (const auto& iv : sp.activity) js["activity"].push_back({iv.on, iv.off});
        j["speakers"].push_back(std::move(js));
    }
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

} // namespace azitrack
