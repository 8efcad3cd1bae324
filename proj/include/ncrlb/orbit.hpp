#pragma once

#include "ncrlb/common.hpp"

namespace ncrlb {

struct DynamicsConstants {
    static constexpr double mu = 3.986e14;    // m^3/s^2
    static constexpr double J2 = 1.08263e-3;
    static constexpr double Re = 6.371e6;     // m
};

// clock stored range-equivalent: bias = c*b [m], drift = c*bdot [m/s]
struct ClockState {
    double bias = 0.0;
    double drift = 0.0;
};

struct SatelliteState {
    Vec3 position = Vec3::Zero();
    Vec3 velocity = Vec3::Zero();
    ClockState clock;
    double epoch = 0.0;

    // [p(3), v(3), b, bdot]
    Vec8 to_vector() const;
    static SatelliteState from_vector(const Vec8& x, double epoch = 0.0);
};

struct ProcessNoiseSpec {
    double sigma_a_sq = 1e-13;      // m^2/s^3
    double sigma_y_sq = 1e-20;      // clock bias drift, s^2/s
    double clock_drift_psd = 1e-26; // clock rate drift, s^2/s^3
};

Vec3 central_acceleration(const Vec3& p);
Vec3 j2_perturbation(const Vec3& p);

// central + J2 (Eq. 1)
Vec3 j2_acceleration(const Vec3& p);

// d(accel)/dp, central + J2
Mat3 gravity_gradient(const Vec3& p, bool include_j2 = true);

Mat8 linearize_dynamics(const SatelliteState& s);

// F = I + A dt + A^2 dt^2 / 2, A at the two-body half-step midpoint
Mat8 discrete_transition(const SatelliteState& s, double dt);

Mat8 process_noise(const ProcessNoiseSpec& spec, double dt);

struct PropagationOptions {
    double max_step = 1.0;  // s
    bool include_j2 = true;
};

SatelliteState propagate_state(const SatelliteState& s, double dt,
                               const PropagationOptions& opt = {});

// Analytic two-body propagation (universal variables, Lagrange f and g).
void kepler_propagate(const Vec3& r0, const Vec3& v0, double dt,
                      Vec3& r, Vec3& v);

double specific_energy(const Vec3& p, const Vec3& v, bool include_j2 = true);

// circular-orbit speed direction: normal x r
Vec3 circular_velocity(const Vec3& p, const Vec3& normal = Vec3::UnitZ());

// displacement from an unmodelled constant acceleration over dt
inline double unmodelled_displacement(double accel, double dt) { return 0.5 * accel * dt * dt; }

}  // namespace ncrlb
