#ifndef AZITRACK_ARRAYSIM_HPP
#define AZITRACK_ARRAYSIM_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "azitrack/circular.hpp"
#include "azitrack/scenario.hpp"
#include "azitrack/tracker.hpp"

namespace azitrack {

struct ArrayGeometry {
    int num_mics = 12;
    double radius = 0.05; // meters
    std::vector<double> mic_az;
    double speed_of_sound = 343.0;

    static ArrayGeometry uniform_circle(int num_mics, double radius);
};

// One narrowband STFT-domain array snapshot.
struct Snapshot {
    int frame = 0;
    int bin = 0;
    double frequency = 0.0; // Hz
    std::vector<std::complex<double>> p;
};

// Free-field plane-wave response; unit-magnitude entries.
std::vector<std::complex<double>> steering_vector(const ArrayGeometry& geom,
                                                  double frequency, WrappedAngle az);

struct SynthesisResult {
    std::vector<Snapshot> snapshots;
    std::vector<int> dominant; // per snapshot: dominant speaker, -1 if none
};

// Per (frame, bin): one dominant active speaker (W-disjoint sparsity),
// complex-Gaussian source plus i.i.d. sensor noise. Deterministic per seed.
SynthesisResult synthesize(const ArrayGeometry& geom, const TruthTable& truth,
                           const std::vector<double>& source_power, double noise_power,
                           const std::vector<double>& frequencies, std::uint64_t seed);

struct BinEstimate {
    int frame = 0;
    int bin = 0;
    WrappedAngle az;
    double coherence = 0.0; // normalized steered power, [0,1]
};

// Normalized steered power |h(az)^H p|^2 / (M ||p||^2) at one direction.
double coherence_at(const Snapshot& snapshot, const ArrayGeometry& geom, WrappedAngle az);

// Grid search of the normalized steered response; ties toward smaller azimuth.
BinEstimate estimate_doa_bin(const Snapshot& snapshot, const ArrayGeometry& geom,
                             double grid_step);

// Batch estimation. The OpenMP version produces results bit-identical to the
// serial reference.
std::vector<BinEstimate> estimate_doa_bins_serial(std::span<const Snapshot> snapshots,
                                                  const ArrayGeometry& geom,
                                                  double grid_step);
std::vector<BinEstimate> estimate_doa_bins(std::span<const Snapshot> snapshots,
                                           const ArrayGeometry& geom, double grid_step);

// Keep the ceil(keep_fraction * N) highest-coherence estimates per frequency
// bin index; ties broken by (frame, bin).
std::vector<BinEstimate> select_bins(const std::vector<BinEstimate>& estimates,
                                     double keep_fraction);

// Convert selected estimates into tracker observations, synthesizing masks
// from the oracle dominant-speaker identities through the scenario mask
// model. Estimates from noise-only bins (dominant < 0) are dropped.
std::vector<Observation> to_observations(const std::vector<BinEstimate>& selected,
                                         const SynthesisResult& synth, int num_speakers,
                                         const ObservationModel& mask_model);

} // namespace azitrack

#endif
