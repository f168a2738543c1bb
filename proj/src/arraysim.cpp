#include "azitrack/arraysim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace azitrack {

ArrayGeometry ArrayGeometry::uniform_circle(int num_mics, double radius) {
    if (num_mics < 2) throw ValidationError("ArrayGeometry: need at least 2 microphones");
    if (radius <= 0.0) throw ValidationError("ArrayGeometry: radius must be positive");
    ArrayGeometry g;
    g.num_mics = num_mics;
    g.radius = radius;
    g.mic_az.resize(num_mics);
    for (int m = 0; m < num_mics; ++m) {
        g.mic_az[m] = wrap(kTwoPi * double(m) / double(num_mics)).rad;
    }
    return g;
}

std::vector<std::complex<double>> steering_vector(const ArrayGeometry& geom,
                                                  double frequency, WrappedAngle az) {
    if (frequency <= 0.0) throw ValidationError("steering_vector: frequency must be positive");
    const double k = kTwoPi * frequency / geom.speed_of_sound;
    std::vector<std::complex<double>> h(geom.num_mics);
    for (int m = 0; m < geom.num_mics; ++m) {
        const double phase = k * geom.radius * std::cos(az.rad - geom.mic_az[m]);
        h[m] = std::polar(1.0, phase);
    }
    return h;
}

SynthesisResult synthesize(const ArrayGeometry& geom, const TruthTable& truth,
                           const std::vector<double>& source_power, double noise_power,
                           const std::vector<double>& frequencies, std::uint64_t seed) {
    if (noise_power < 0.0) throw ValidationError("synthesize: negative noise power");
    for (double p : source_power) {
        if (p < 0.0) throw ValidationError("synthesize: negative source power");
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto cgauss = [&](double power) {
        const double s = std::sqrt(power / 2.0);
        return std::complex<double>(s * gauss(rng), s * gauss(rng));
    };

    SynthesisResult out;
    out.snapshots.reserve(truth.size() * frequencies.size());

    for (std::size_t frame = 0; frame < truth.size(); ++frame) {
        std::vector<int> active;
        for (std::size_t q = 0; q < truth[frame].size(); ++q) {
            if (truth[frame][q].active) active.push_back(int(q));
        }
        for (std::size_t bin = 0; bin < frequencies.size(); ++bin) {
            Snapshot snap;
            snap.frame = int(frame);
            snap.bin = int(bin);
            snap.frequency = frequencies[bin];
            snap.p.assign(geom.num_mics, {0.0, 0.0});

            int dom = -1;
            if (!active.empty()) {
                std::uniform_int_distribution<std::size_t> pick(0, active.size() - 1);
                dom = active[pick(rng)];
                const double power =
                    (std::size_t(dom) < source_power.size()) ? source_power[dom] : 1.0;
                const auto s = cgauss(power);
                const auto h = steering_vector(geom, snap.frequency, truth[frame][dom].az);
                for (int m = 0; m < geom.num_mics; ++m) snap.p[m] = h[m] * s;
            }
            for (int m = 0; m < geom.num_mics; ++m) snap.p[m] += cgauss(noise_power);

            out.snapshots.push_back(std::move(snap));
            out.dominant.push_back(dom);
        }
    }
    return out;
}

double coherence_at(const Snapshot& snapshot, const ArrayGeometry& geom, WrappedAngle az) {
    double norm2 = 0.0;
    for (const auto& v : snapshot.p) norm2 += std::norm(v);
    if (norm2 == 0.0) throw ValidationError("coherence_at: zero snapshot");
    const auto h = steering_vector(geom, snapshot.frequency, az);
    std::complex<double> dot{0.0, 0.0};
    for (int m = 0; m < geom.num_mics; ++m) dot += std::conj(h[m]) * snapshot.p[m];
    return std::norm(dot) / (double(geom.num_mics) * norm2);
}

BinEstimate estimate_doa_bin(const Snapshot& snapshot, const ArrayGeometry& geom,
                             double grid_step) {
    if (grid_step <= 0.0 || grid_step > kPi / 8.0) {
        throw ValidationError("estimate_doa_bin: grid_step outside (0, pi/8]");
    }
    double norm2 = 0.0;
    for (const auto& v : snapshot.p) norm2 += std::norm(v);
    if (norm2 == 0.0) throw ValidationError("estimate_doa_bin: zero snapshot");

    const int grid_n = int(std::floor(kTwoPi / grid_step));
    const double m_count = double(geom.num_mics);

    BinEstimate best;
    best.frame = snapshot.frame;
    best.bin = snapshot.bin;
    best.coherence = -1.0;
    for (int i = 0; i < grid_n; ++i) {
        const double az = -kPi + double(i) * grid_step;
        if (az >= kPi) break;
        const auto h = steering_vector(geom, snapshot.frequency, WrappedAngle{az});
        std::complex<double> dot{0.0, 0.0};
        for (int m = 0; m < geom.num_mics; ++m) dot += std::conj(h[m]) * snapshot.p[m];
        const double coh = std::norm(dot) / (m_count * norm2);
        if (coh > best.coherence) {
            best.coherence = coh;
            best.az = WrappedAngle{az};
        }
    }
    best.coherence = std::min(best.coherence, 1.0);
    return best;
}

std::vector<BinEstimate> estimate_doa_bins_serial(std::span<const Snapshot> snapshots,
                                                  const ArrayGeometry& geom,
                                                  double grid_step) {
    std::vector<BinEstimate> out(snapshots.size());
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
        out[i] = estimate_doa_bin(snapshots[i], geom, grid_step);
    }
    return out;
}

std::vector<BinEstimate> estimate_doa_bins(std::span<const Snapshot> snapshots,
                                           const ArrayGeometry& geom, double grid_step) {
    std::vector<BinEstimate> out(snapshots.size());
#pragma omp parallel for schedule(dynamic, 32)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(snapshots.size()); ++i) {
        out[i] = estimate_doa_bin(snapshots[i], geom, grid_step);
    }
    return out;
}

std::vector<BinEstimate> select_bins(const std::vector<BinEstimate>& estimates,
                                     double keep_fraction) {
    if (keep_fraction <= 0.0 || keep_fraction > 1.0) {
        throw ValidationError("select_bins: keep_fraction outside (0, 1]");
    }
    std::map<int, std::vector<BinEstimate>> by_freq_bin;
    for (const auto& e : estimates) by_freq_bin[e.bin].push_back(e);

    std::vector<BinEstimate> selected;
    for (auto& [bin, group] : by_freq_bin) {
        const std::size_t keep =
            std::size_t(std::ceil(keep_fraction * double(group.size())));
        std::stable_sort(group.begin(), group.end(),
                         [](const BinEstimate& a, const BinEstimate& b) {
                             if (a.coherence != b.coherence) return a.coherence > b.coherence;
                             if (a.frame != b.frame) return a.frame < b.frame;
                             return a.bin < b.bin;
                         });
        group.resize(std::min(keep, group.size()));
        selected.insert(selected.end(), group.begin(), group.end());
    }
    std::sort(selected.begin(), selected.end(), [](const BinEstimate& a, const BinEstimate& b) {
        if (a.frame != b.frame) return a.frame < b.frame;
        return a.bin < b.bin;
    });
    return selected;
}

std::vector<Observation> to_observations(const std::vector<BinEstimate>& selected,
                                         const SynthesisResult& synth, int num_speakers,
                                         const ObservationModel& mask_model) {
    std::map<std::pair<int, int>, int> dominant;
    for (std::size_t i = 0; i < synth.snapshots.size(); ++i) {
        dominant[{synth.snapshots[i].frame, synth.snapshots[i].bin}] = synth.dominant[i];
    }

    std::mt19937_64 rng(mask_model.seed);
    std::normal_distribution<double> mask_noise(0.0, mask_model.mask_noise_sigma);

    std::vector<Observation> out;
    out.reserve(selected.size());
    for (const auto& e : selected) {
        const auto it = dominant.find({e.frame, e.bin});
        if (it == dominant.end() || it->second < 0) continue;
        const int dom = it->second;

        double m = mask_model.mask_fidelity;
        if (mask_model.mask_noise_sigma > 0.0) m += mask_noise(rng);
        m = std::clamp(m, 0.0, 1.0);

        std::vector<double> masks(num_speakers);
        for (int q = 0; q < num_speakers; ++q) {
            masks[q] = (q == dom) ? m : (1.0 - m) / double(num_speakers - 1);
        }
        if (num_speakers == 1) masks[0] = m;

        out.push_back(Observation{e.frame, e.bin, e.az, std::move(masks)});
    }
    return out;
}

} // namespace azitrack
