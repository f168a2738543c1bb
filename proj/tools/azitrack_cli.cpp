#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "azitrack/arraysim.hpp"
#include "azitrack/io.hpp"
#include "azitrack/metrics.hpp"
#include "azitrack/scenario.hpp"
#include "azitrack/svg.hpp"
#include "azitrack/tracker.hpp"

namespace fs = std::filesystem;
using namespace azitrack;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitMetric = 3;
constexpr int kExitIo = 4;

struct ScenarioArgs {
    std::string scenario;
    std::string obs_model_path;
};

// A scenario is either a named preset or a trajectory JSON file.
ScenarioPreset load_scenario(const ScenarioArgs& args) {
    ScenarioPreset p;
    if (fs::exists(args.scenario)) {
        p.trajectory = read_trajectory(args.scenario);
    } else {
        p = preset(args.scenario);
    }
    if (!args.obs_model_path.empty()) {
        p.obs_model = read_obs_model(args.obs_model_path);
    }
    return p;
}

TrackerConfig default_config_for(const ObservationModel& m) {
    TrackerConfig c;
    c.motion.dt = 1.0 / m.frame_rate;
    c.motion.r_obs = m.doa_noise_sigma * m.doa_noise_sigma;
    return c;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos) {
        const std::uint64_t s = std::stoull(text);
        return {s, s};
    }
    const std::uint64_t a = std::stoull(text.substr(0, pos));
    const std::uint64_t b = std::stoull(text.substr(pos + 2));
    if (b < a) throw ValidationError("seed range end before start: " + text);
    return {a, b};
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int cmd_simulate(const ScenarioArgs& sargs, std::uint64_t seed, const std::string& out_dir) {
    ScenarioPreset p = load_scenario(sargs);
    p.obs_model.seed = seed;
    const auto gen = generate(p.trajectory, p.obs_model);
    fs::create_directories(out_dir);
    write_observations(gen.observations, out_dir + "/observations.jsonl");
    write_truth(gen.truth, out_dir + "/truth.csv");
    write_obs_model(p.obs_model, out_dir + "/obs_model.json");
    std::cout << "frames: " << gen.truth.size() << "\n"
              << "speakers: " << (gen.truth.empty() ? 0 : gen.truth.front().size()) << "\n"
              << "observations: " << gen.observations.size() << "\n";
    return 0;
}

int cmd_track(const std::string& obs_path, const std::string& config_path,
              const std::string& mode_flag, const std::string& out_dir) {
    const auto obs = read_observations(obs_path);
    TrackerConfig config;
    if (!config_path.empty()) config = read_tracker_config(config_path);
    if (!mode_flag.empty()) config.mode = parse_mode(mode_flag);
    if (!obs.empty()) config.num_speakers = int(obs.front().masks.size());

    const auto result = run(obs, config);
    fs::create_directories(out_dir);
    write_tracks(result, out_dir + "/tracks.csv");
    write_diagnostics(result, out_dir + "/diagnostics.jsonl");
    std::cout << "frames tracked: " << result.points.size() << "\n"
              << "mode: " << mode_name(config.mode) << "\n";
    return 0;
}

int cmd_eval(const std::string& tracks_path, const std::string& truth_path,
             const std::string& out_path, bool eval_silent, int persistence) {
    const auto tracks = read_tracks(tracks_path);
    const auto truth = read_truth(truth_path);
    EvalOptions opts;
    opts.eval_silent = eval_silent;
    opts.persistence = persistence;
    const auto report = evaluate(tracks, truth, opts);
    if (!out_path.empty()) write_report(report, out_path);
    std::cout << "rlmae_deg: " << fmt_double(report.rlmae_deg) << "\n"
              << "identity_switches: " << report.identity_switches << "\n";
    return 0;
}

struct RunOutcome {
    double rlmae_deg = 0.0;
    int switches = 0;
};

int cmd_compare(const ScenarioArgs& sargs, const std::string& seeds_text,
                const std::string& config_path, const std::string& out_dir,
                bool plot_all) {
    ScenarioPreset p = load_scenario(sargs);
    const auto [seed_lo, seed_hi] = parse_seed_range(seeds_text);
    const std::size_t num_seeds = std::size_t(seed_hi - seed_lo + 1);

    const AssociationMode modes[] = {AssociationMode::Spatial, AssociationMode::Spectral,
                                     AssociationMode::Joint};
    TrackerConfig base = config_path.empty() ? default_config_for(p.obs_model)
                                             : read_tracker_config(config_path);
    base.num_speakers = int(p.trajectory.speakers.size());

    fs::create_directories(out_dir);
    const std::size_t total = 3 * num_seeds;
    std::vector<RunOutcome> outcomes(total);
    std::string worker_error;

#pragma omp parallel for schedule(dynamic) collapse(2)
    for (int mi = 0; mi < 3; ++mi) {
        for (std::ptrdiff_t si = 0; si < std::ptrdiff_t(num_seeds); ++si) {
          try {
            ObservationModel om = p.obs_model;
            om.seed = seed_lo + std::uint64_t(si);
            const auto gen = generate(p.trajectory, om);

            TrackerConfig config = base;
            config.mode = modes[mi];
            config.seed = om.seed;

            const auto result = run(gen.observations, config);
            const auto report = evaluate(result, gen.truth);
            outcomes[std::size_t(mi) * num_seeds + std::size_t(si)] =
                RunOutcome{report.rlmae_deg, report.identity_switches};

            if (plot_all || si == 0) {
                write_scenario_svg(out_dir + "/run_" + mode_name(modes[mi]) + "_seed" +
                                       std::to_string(om.seed) + ".svg",
                                   gen.observations, gen.truth, &result,
                                   mode_name(modes[mi]) + " association, seed " +
                                       std::to_string(om.seed));
            }
          } catch (const std::exception& e) {
#pragma omp critical
            worker_error = e.what();
          }
        }
    }
    if (!worker_error.empty()) throw ValidationError(worker_error);

    std::ofstream table(out_dir + "/results.csv");
    if (!table) throw IoError("cannot open for writing: " + out_dir + "/results.csv");
    table << "mode,seed,rlmae_deg,identity_switches\n";
    for (int mi = 0; mi < 3; ++mi) {
        for (std::size_t si = 0; si < num_seeds; ++si) {
            const auto& o = outcomes[std::size_t(mi) * num_seeds + si];
            table << mode_name(modes[mi]) << ',' << (seed_lo + si) << ','
                  << fmt_double(o.rlmae_deg) << ',' << o.switches << '\n';
        }
    }
    table.close();

    std::ofstream summary(out_dir + "/summary.csv");
    if (!summary) throw IoError("cannot open for writing: " + out_dir + "/summary.csv");
    summary << "mode,median_rlmae_deg,switch_seed_fraction\n";
    std::cout << "mode,median_rlmae_deg,switch_seed_fraction\n";
    for (int mi = 0; mi < 3; ++mi) {
        std::vector<double> maes;
        std::size_t with_switch = 0;
        for (std::size_t si = 0; si < num_seeds; ++si) {
            const auto& o = outcomes[std::size_t(mi) * num_seeds + si];
            maes.push_back(o.rlmae_deg);
            if (o.switches > 0) ++with_switch;
        }
        const double frac = double(with_switch) / double(num_seeds);
        summary << mode_name(modes[mi]) << ',' << fmt_double(median(maes)) << ','
                << fmt_double(frac) << '\n';
        std::cout << mode_name(modes[mi]) << ',' << fmt_double(median(maes)) << ','
                  << fmt_double(frac) << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-speaker azimuth tracking experiments"};
    app.require_subcommand(1);

    ScenarioArgs sim_sargs;
    std::uint64_t sim_seed = 0;
    std::string sim_out = "out";
    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic scenario");
    simulate->add_option("--scenario", sim_sargs.scenario, "Preset name or trajectory JSON file")
        ->required();
    simulate->add_option("--obs-model", sim_sargs.obs_model_path, "Observation model JSON file");
    simulate->add_option("--seed", sim_seed, "RNG seed");
    simulate->add_option("--out", sim_out, "Output directory")->required();

    std::string trk_obs, trk_config, trk_mode, trk_out = "out";
    auto* track = app.add_subcommand("track", "Run the tracker on an observation stream");
    track->add_option("--obs", trk_obs, "Observations JSONL file")->required();
    track->add_option("--config", trk_config, "Tracker config JSON file");
    track->add_option("--mode", trk_mode, "spatial|spectral|joint");
    track->add_option("--out", trk_out, "Output directory")->required();

    std::string ev_tracks, ev_truth, ev_out;
    bool ev_silent = false;
    int ev_persistence = 25;
    auto* eval = app.add_subcommand("eval", "Score tracks against ground truth");
    eval->add_option("--tracks", ev_tracks, "Tracks CSV file")->required();
    eval->add_option("--truth", ev_truth, "Ground truth CSV file")->required();
    eval->add_option("--out", ev_out, "Report JSON output path");
    eval->add_flag("--eval-silent", ev_silent, "Include inactive frames in the error");
    eval->add_option("--persistence", ev_persistence, "Identity-switch persistence, frames");

    ScenarioArgs cmp_sargs;
    std::string cmp_seeds = "0..9", cmp_config, cmp_out = "out";
    bool cmp_plot_all = false;
    auto* compare = app.add_subcommand("compare", "Run all association modes over a seed range");
    compare->add_option("--scenario", cmp_sargs.scenario, "Preset name or trajectory JSON file")
        ->required();
    compare->add_option("--obs-model", cmp_sargs.obs_model_path, "Observation model JSON file");
    compare->add_option("--seeds", cmp_seeds, "Seed range A..B (or single seed)");
    compare->add_option("--config", cmp_config, "Tracker config JSON file");
    compare->add_option("--out", cmp_out, "Output directory")->required();
    compare->add_flag("--plot-all", cmp_plot_all, "Write an SVG for every run, not just seed A");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return cmd_simulate(sim_sargs, sim_seed, sim_out);
        if (track->parsed()) return cmd_track(trk_obs, trk_config, trk_mode, trk_out);
        if (eval->parsed()) return cmd_eval(ev_tracks, ev_truth, ev_out, ev_silent, ev_persistence);
        if (compare->parsed()) return cmd_compare(cmp_sargs, cmp_seeds, cmp_config, cmp_out, cmp_plot_all);
    } catch (const MetricUndefinedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMetric;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
