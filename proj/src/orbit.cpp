#include "ncrlb/orbit.hpp"

#include <cmath>

namespace ncrlb {

namespace {

using K = DynamicsConstants;

double checked_norm(const Vec3& p) {
    double r = p.norm();
    if (!(r > 0.0)) throw Error("degenerate position");
    return r;
}

// Stumpff functions
double stumpff_c(double z) {
    if (z > 1e-8) return (1.0 - std::cos(std::sqrt(z))) / z;
    if (z < -1e-8) return (std::cosh(std::sqrt(-z)) - 1.0) / (-z);
    return 0.5 - z / 24.0 + z * z / 720.0;
}

double stumpff_s(double z) {
    if (z > 1e-8) {
        double sz = std::sqrt(z);
        return (sz - std::sin(sz)) / (sz * sz * sz);
    }
    if (z < -1e-8) {
        double sz = std::sqrt(-z);
        return (std::sinh(sz) - sz) / (sz * sz * sz);
    }
    return 1.0 / 6.0 - z / 120.0 + z * z / 5040.0;
}

Eigen::Matrix<double, 6, 1> deriv(const Eigen::Matrix<double, 6, 1>& x, bool j2) {
    Eigen::Matrix<double, 6, 1> d;
    Vec3 p = x.head<3>();
    d.head<3>() = x.tail<3>();
    d.tail<3>() = j2 ? j2_acceleration(p) : central_acceleration(p);
    return d;
}

}  // namespace

Vec8 SatelliteState::to_vector() const {
    Vec8 x;
    x << position, velocity, clock.bias, clock.drift;
    return x;
}

SatelliteState SatelliteState::from_vector(const Vec8& x, double epoch) {
    SatelliteState s;
    s.position = x.segment<3>(0);
    s.velocity = x.segment<3>(3);
    s.clock = {x(6), x(7)};
    s.epoch = epoch;
    return s;
}

Vec3 central_acceleration(const Vec3& p) {
    double r = checked_norm(p);
    return -K::mu / (r * r * r) * p;
}

Vec3 j2_perturbation(const Vec3& p) {
    double r = checked_norm(p);
    double r2 = r * r;
    double zz = p.z() * p.z() / r2;
    double k = -1.5 * K::mu * K::J2 * K::Re * K::Re / (r2 * r2 * r);
    return k * Vec3(p.x() * (1.0 - 5.0 * zz), p.y() * (1.0 - 5.0 * zz), p.z() * (3.0 - 5.0 * zz));
}

Vec3 j2_acceleration(const Vec3& p) { return central_acceleration(p) + j2_perturbation(p); }

Mat3 gravity_gradient(const Vec3& p, bool include_j2) {
    double r = checked_norm(p);
    double r2 = r * r;
    double r3 = r2 * r;
    Mat3 G = -K::mu / r3 * (Mat3::Identity() - 3.0 * p * p.transpose() / r2);
    if (!include_j2) return G;

    // a_c = k r^-5 p_c f_c(s), s = z^2/r^2, f = (1-5s, 1-5s, 3-5s)
    double k = -1.5 * K::mu * K::J2 * K::Re * K::Re;
    double z = p.z();
    double s = z * z / r2;
    Vec3 f(1.0 - 5.0 * s, 1.0 - 5.0 * s, 3.0 - 5.0 * s);
    double r5 = r3 * r2;
    double r7 = r5 * r2;
    Vec3 ds = -2.0 * z * z / (r2 * r2) * p;
    ds.z() += 2.0 * z / r2;
    for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < 3; ++i) {
            double v = -5.0 / r7 * p(i) * p(c) * f(c);
            v += (c == i ? f(c) : 0.0) / r5;
            v += p(c) / r5 * (-5.0 * ds(i));
            G(c, i) += k * v;
        }
    }
    return G;
}

Mat8 linearize_dynamics(const SatelliteState& s) {
    Mat8 A = Mat8::Zero();
    A.block<3, 3>(0, 3) = Mat3::Identity();
    A.block<3, 3>(3, 0) = gravity_gradient(s.position);
    A(6, 7) = 1.0;
    return A;
}

Mat8 discrete_transition(const SatelliteState& s, double dt) {
    if (dt == 0.0) return Mat8::Identity();
    SatelliteState mid = s;
    kepler_propagate(s.position, s.velocity, 0.5 * dt, mid.position, mid.velocity);
    Mat8 A = linearize_dynamics(mid);
    return Mat8::Identity() + A * dt + 0.5 * A * A * dt * dt;
}

Mat8 process_noise(const ProcessNoiseSpec& spec, double dt) {
    if (!(dt > 0.0)) throw Error("process_noise: dt must be positive");
    if (spec.sigma_a_sq < 0 || spec.sigma_y_sq < 0 || spec.clock_drift_psd < 0)
        throw Error("process_noise: negative spectral density");
    Mat8 Q = Mat8::Zero();
    double q = spec.sigma_a_sq;
    Mat3 I = Mat3::Identity();
    Q.block<3, 3>(0, 0) = q * dt * dt * dt / 3.0 * I;
    Q.block<3, 3>(0, 3) = q * dt * dt / 2.0 * I;
    Q.block<3, 3>(3, 0) = q * dt * dt / 2.0 * I;
    Q.block<3, 3>(3, 3) = q * dt * I;
    double c2 = kSpeedOfLight * kSpeedOfLight;
    Q(6, 6) = spec.sigma_y_sq * c2 * dt;
    Q(7, 7) = spec.clock_drift_psd * c2 * dt;
    return Q;
}

SatelliteState propagate_state(const SatelliteState& s, double dt, const PropagationOptions& opt) {
    SatelliteState out = s;
    if (dt == 0.0) return out;
    int n = std::max(1, static_cast<int>(std::ceil(std::abs(dt) / opt.max_step - 1e-9)));
    double h = dt / n;
    Eigen::Matrix<double, 6, 1> x;
    x << s.position, s.velocity;
    for (int i = 0; i < n; ++i) {
        auto k1 = deriv(x, opt.include_j2);
        auto k2 = deriv(x + 0.5 * h * k1, opt.include_j2);
        auto k3 = deriv(x + 0.5 * h * k2, opt.include_j2);
        auto k4 = deriv(x + h * k3, opt.include_j2);
        x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    out.position = x.head<3>();
    out.velocity = x.tail<3>();
    out.clock.bias = s.clock.bias + s.clock.drift * dt;
    out.epoch = s.epoch + dt;
    return out;
}

void kepler_propagate(const Vec3& r0v, const Vec3& v0v, double dt, Vec3& r, Vec3& v) {
    const double mu = K::mu;
    const double smu = std::sqrt(mu);
    double r0 = checked_norm(r0v);
    double vr0 = r0v.dot(v0v) / r0;
    double alpha = 2.0 / r0 - v0v.squaredNorm() / mu;

    double chi = smu * std::abs(alpha) * dt;
    if (alpha <= 0.0) chi = smu * dt / r0;
    for (int it = 0; it < 100; ++it) {
        double z = alpha * chi * chi;
        double C = stumpff_c(z);
        double S = stumpff_s(z);
        double F = r0 * vr0 / smu * chi * chi * C + (1.0 - alpha * r0) * chi * chi * chi * S +
                   r0 * chi - smu * dt;
        double dF = r0 * vr0 / smu * chi * (1.0 - alpha * chi * chi * S) +
                    (1.0 - alpha * r0) * chi * chi * C + r0;
        double step = F / dF;
        chi -= step;
        if (std::abs(step) < 1e-13 * std::max(1.0, std::abs(chi))) break;
    }
    double z = alpha * chi * chi;
    double C = stumpff_c(z);
    double S = stumpff_s(z);
    double f = 1.0 - chi * chi / r0 * C;
    double g = dt - chi * chi * chi * S / smu;
    r = f * r0v + g * v0v;
    double rn = r.norm();
    double fdot = smu / (rn * r0) * (alpha * chi * chi * chi * S - chi);
    double gdot = 1.0 - chi * chi / rn * C;
    v = fdot * r0v + gdot * v0v;
}

double specific_energy(const Vec3& p, const Vec3& v, bool include_j2) {
    double r = checked_norm(p);
    double e = 0.5 * v.squaredNorm() - K::mu / r;
    if (include_j2) {
        double zz = p.z() * p.z() / (r * r);
        e += K::mu * K::J2 * K::Re * K::Re / (2.0 * r * r * r) * (3.0 * zz - 1.0);
    }
    return e;
}

Vec3 circular_velocity(const Vec3& p, const Vec3& normal) {
    double r = checked_norm(p);
    Vec3 dir = normal.cross(p);
    if (dir.norm() < 1e-12 * r) dir = Vec3::UnitX().cross(p);
    return std::sqrt(K::mu / r) * dir.normalized();
}

}  // namespace ncrlb
