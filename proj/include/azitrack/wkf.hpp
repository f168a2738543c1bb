#ifndef AZITRACK_WKF_HPP
#define AZITRACK_WKF_HPP

#include "azitrack/circular.hpp"
#include "azitrack/common.hpp"

namespace azitrack {

// Symmetric 2x2 covariance plus the 2-vector mean of one speaker's belief.
struct Mat2 {
    double a00 = 0, a01 = 0, a10 = 0, a11 = 0;

    static Mat2 identity(double s = 1.0) { return {s, 0, 0, s}; }
    double trace() const { return a00 + a11; }
};

struct SpeakerState {
    double az = 0.0;  // wrapped azimuth, [-pi, pi)
    double vel = 0.0; // azimuthal velocity, rad/s
    Mat2 cov = Mat2::identity();
};

// Constant-velocity motion with discretized white-noise acceleration.
struct MotionModel {
    double dt = 0.016;      // frame hop, seconds
    double q_accel = 0.1;   // process noise spectral density, rad^2/s^3
    double r_obs = 1e-3;    // observation noise variance, rad^2
};

enum class WrapMode { Soft, Hard };

struct Innovation {
    double g = 0.0;          // collapsed wrapped innovation, rad
    double S = 0.0;          // innovation variance, rad^2
    double likelihood = 0.0; // wrapped-Gaussian density at the observation
};

SpeakerState predict(const SpeakerState& state, const MotionModel& model);

// Wrapped innovation over candidates z + 2*pi*l, l in {-1,0,1}.
// Soft mode moment-matches the candidates; Hard mode keeps the best one.
Innovation innovation(const SpeakerState& state, WrappedAngle z,
                      const MotionModel& model, WrapMode mode = WrapMode::Soft);

// Kalman correction with the innovation weighted by the association
// probability beta. beta=0 is a no-op, beta=1 a full update.
SpeakerState update(const SpeakerState& state, double g, double S, double beta,
                    const MotionModel& model);

} // namespace azitrack

#endif
