#include "azitrack/wkf.hpp"

#include <cmath>

namespace azitrack {

namespace {

double gauss_pdf(double x, double var) {
    return std::exp(-0.5 * x * x / var) / std::sqrt(kTwoPi * var);
}

// Symmetrize and floor both eigenvalues at 1e-12.
Mat2 condition_cov(Mat2 c) {
    const double off = 0.5 * (c.a01 + c.a10);
    c.a01 = c.a10 = off;

    constexpr double floor = 1e-12;
    const double mean = 0.5 * (c.a00 + c.a11);
    const double diff = 0.5 * (c.a00 - c.a11);
    const double disc = std::sqrt(diff * diff + off * off);
    const double lo = mean - disc;
    const double hi = mean + disc;
    if (lo >= floor) return c;
    if (hi <= floor) return Mat2::identity(floor);

    // Shift the low eigenvalue up to the floor along its eigenvector.
    const double bump = floor - lo;
    double vx, vy; // eigenvector of lo
    if (off == 0.0) {
        vx = (c.a00 <= c.a11) ? 1.0 : 0.0;
        vy = 1.0 - vx;
    } else {
        vx = lo - c.a11;
        vy = off;
        const double n = std::hypot(vx, vy);
        vx /= n;
        vy /= n;
    }
    c.a00 += bump * vx * vx;
    c.a01 += bump * vx * vy;
    c.a10 = c.a01;
    c.a11 += bump * vy * vy;
    return c;
}

} // namespace

SpeakerState predict(const SpeakerState& state, const MotionModel& model) {
    const double dt = model.dt;
    SpeakerState out;
    out.az = wrap(state.az + dt * state.vel).rad;
    out.vel = state.vel;

    // F * C * F^T with F = [[1, dt], [0, 1]]
    const Mat2& c = state.cov;
    Mat2 p;
    p.a00 = c.a00 + dt * (c.a10 + c.a01) + dt * dt * c.a11;
    p.a01 = c.a01 + dt * c.a11;
    p.a10 = c.a10 + dt * c.a11;
    p.a11 = c.a11;

    const double q = model.q_accel;
    p.a00 += q * dt * dt * dt / 3.0;
    p.a01 += q * dt * dt / 2.0;
    p.a10 += q * dt * dt / 2.0;
    p.a11 += q * dt;

    out.cov = condition_cov(p);
    return out;
}

Innovation innovation(const SpeakerState& state, WrappedAngle z,
                      const MotionModel& model, WrapMode mode) {
    Innovation out;
    out.S = state.cov.a00 + model.r_obs;

    double nu[3];
    double w[3];
    double wsum = 0.0;
    for (int l = -1; l <= 1; ++l) {
        const double v = (z.rad + kTwoPi * l) - state.az;
        nu[l + 1] = v;
        w[l + 1] = gauss_pdf(v, out.S);
        wsum += w[l + 1];
    }

    if (wsum <= 0.0) {
        out.g = nu[1];
        out.likelihood = 0.0;
        return out;
    }
    if (mode == WrapMode::Hard) {
        int best = 0;
        for (int i = 1; i < 3; ++i)
            if (w[i] > w[best]) best = i;
        out.g = nu[best];
        out.likelihood = w[best];
    } else {
        double num = 0.0;
        for (int i = 0; i < 3; ++i) num += w[i] * nu[i];
        out.g = num / wsum;
        out.likelihood = wsum;
    }
    return out;
}

SpeakerState update(const SpeakerState& state, double g, double S, double beta,
                    const MotionModel& model) {
    (void)model;
    if (beta < 0.0 || beta > 1.0) throw ValidationError("update: beta outside [0,1]");
    if (S <= 0.0) throw ValidationError("update: non-positive innovation variance");

    const double k0 = state.cov.a00 / S;
    const double k1 = state.cov.a10 / S;

    SpeakerState out;
    out.az = wrap(state.az + k0 * beta * g).rad;
    out.vel = state.vel + k1 * beta * g;

    Mat2 c = state.cov;
    c.a00 -= beta * k0 * S * k0;
    c.a01 -= beta * k0 * S * k1;
    c.a10 -= beta * k1 * S * k0;
    c.a11 -= beta * k1 * S * k1;
    out.cov = condition_cov(c);

    if (out.cov.a00 <= 0.0 || out.cov.a11 <= 0.0) {
        throw NumericalError("update: covariance lost positive definiteness");
    }
    return out;
}

} // namespace azitrack
