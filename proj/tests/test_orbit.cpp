#include <gtest/gtest.h>

#include <random>

#include "ncrlb/orbit.hpp"

using namespace ncrlb;

namespace {

constexpr double kR550 = DynamicsConstants::Re + 550e3;

SatelliteState circular(double r = kR550, bool tilt = false) {
    SatelliteState s;
    s.position = tilt ? Vec3(r * 0.8, 0.0, r * 0.6) : Vec3(r, 0.0, 0.0);
    s.velocity = circular_velocity(s.position, tilt ? Vec3(-0.36, 0.8, 0.48) : Vec3::UnitZ());
    return s;
}

// plain RK4 on central + J2, fixed step; independent of the library integrator
void rk4_oracle(Vec3& p, Vec3& v, double dt, double h) {
    int n = static_cast<int>(std::round(dt / h));
    for (int i = 0; i < n; ++i) {
        Vec3 k1p = v, k1v = j2_acceleration(p);
        Vec3 k2p = v + 0.5 * h * k1v, k2v = j2_acceleration(p + 0.5 * h * k1p);
        Vec3 k3p = v + 0.5 * h * k2v, k3v = j2_acceleration(p + 0.5 * h * k2p);
        Vec3 k4p = v + h * k3v, k4v = j2_acceleration(p + h * k3p);
        p += h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
        v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    }
}

}  // namespace

TEST(J2Acceleration, EquatorialValues) {
    Vec3 p(6.921e6, 0, 0);
    Vec3 c = central_acceleration(p);
    Vec3 j = j2_perturbation(p);
    EXPECT_NEAR(c.x(), -8.321461263629, 1e-9);
    EXPECT_NEAR(j.x(), -1.1451132080583e-2, 1e-14);
    EXPECT_DOUBLE_EQ(j.y(), 0.0);
    EXPECT_DOUBLE_EQ(j.z(), 0.0);
    EXPECT_TRUE((j2_acceleration(p) - (c + j)).norm() < 1e-15);
}

TEST(J2Acceleration, PolarAxis) {
    Vec3 p(0, 0, 6.921e6);
    Vec3 j = j2_perturbation(p);
    EXPECT_EQ(j.x(), 0.0);
    EXPECT_EQ(j.y(), 0.0);
    EXPECT_NEAR(j.z(), 2.2902264161166e-2, 1e-14);
}

TEST(J2Acceleration, ZeroPositionThrows) {
    EXPECT_THROW(j2_acceleration(Vec3::Zero()), Error);
}

TEST(J2Acceleration, MatchesPotentialGradient) {
    const double mu = DynamicsConstants::mu, J2 = DynamicsConstants::J2, Re = DynamicsConstants::Re;
    auto U = [&](const Vec3& p) {
        double r = p.norm(), z = p.z();
        return mu / r - mu * J2 * Re * Re / (2 * r * r * r) * (3 * z * z / (r * r) - 1);
    };
    Vec3 p(4.1e6, -3.3e6, 4.2e6);
    Vec3 g;
    for (int i = 0; i < 3; ++i) {
        Vec3 e = Vec3::Unit(i) * 1.0;
        g(i) = (U(p + e) - U(p - e)) / 2.0;
    }
    Vec3 a = j2_acceleration(p);
    EXPECT_LT((g - a).norm() / a.norm(), 1e-7);
}

TEST(Linearize, CentralGradientBlock) {
    Vec3 p(kR550, 0, 0);
    Mat3 G = gravity_gradient(p, false);
    double k = DynamicsConstants::mu / std::pow(kR550, 3);
    Mat3 expect = Vec3(2 * k, -k, -k).asDiagonal();
    EXPECT_LT((G - expect).norm(), 1e-15);
}

TEST(Linearize, Structure) {
    SatelliteState s = circular();
    Mat8 A = linearize_dynamics(s);
    EXPECT_TRUE((A.block<3, 3>(0, 3).isIdentity(0)));
    EXPECT_TRUE((A.block<3, 3>(0, 0).isZero(0)));
    EXPECT_TRUE((A.block<3, 3>(3, 3).isZero(0)));
    EXPECT_EQ(A(6, 7), 1.0);
    EXPECT_EQ(A(6, 6), 0.0);
    EXPECT_EQ(A(7, 6), 0.0);
    EXPECT_EQ(A(7, 7), 0.0);
    EXPECT_TRUE((A.block<6, 2>(0, 6).isZero(0)));
    EXPECT_TRUE((A.block<2, 6>(6, 0).isZero(0)));
    EXPECT_LT((A.block<3, 3>(3, 0) - gravity_gradient(s.position)).norm(), 1e-18);
}

TEST(Linearize, FiniteDifferenceColumns) {
    Vec3 p(3.9e6, 4.4e6, 3.5e6);
    Mat3 G = gravity_gradient(p);
    for (int i = 0; i < 3; ++i) {
        Vec3 e = Vec3::Unit(i);
        Vec3 fd = (j2_acceleration(p + e) - j2_acceleration(p - e)) / 2.0;
        EXPECT_LT((fd - G.col(i)).norm() / G.col(i).norm(), 1e-6) << "column " << i;
    }
}

TEST(Transition, ZeroStepIsIdentity) {
    EXPECT_TRUE(discrete_transition(circular(), 0.0).isIdentity(0));
}

TEST(Transition, ApproachesIdentityLinearly) {
    SatelliteState s = circular();
    double prev = 0;
    for (double dt : {1e-1, 1e-2, 1e-3}) {
        double d = (discrete_transition(s, dt) - Mat8::Identity()).norm();
        if (prev > 0) EXPECT_NEAR(prev / d, 10.0, 0.05);
        prev = d;
    }
}

TEST(Transition, PredictsPerturbationAgainstRk4) {
    // F maps a state perturbation over 1 s; compared with RK4 at 1 ms
    SatelliteState s = circular();
    Vec8 dx;
    dx << 120.0, -80.0, 45.0, 0.05, -0.02, 0.03, 0.0, 0.0;
    Mat8 F = discrete_transition(s, 1.0);
    Vec3 p0 = s.position, v0 = s.velocity;
    Vec3 p1 = p0 + dx.head<3>(), v1 = v0 + dx.segment<3>(3);
    rk4_oracle(p0, v0, 1.0, 1e-3);
    rk4_oracle(p1, v1, 1.0, 1e-3);
    Vec8 pred = F * dx;
    EXPECT_LT((pred.head<3>() - (p1 - p0)).norm(), 1e-4);
}

TEST(Transition, SecondOrderRemainder) {
    SatelliteState s = circular(kR550, true);
    Mat8 F = discrete_transition(s, 1.0);
    Vec8 dir;
    dir << 0.6, -0.3, 0.74, 0, 0, 0, 0, 0;
    dir.normalize();
    PropagationOptions o;
    o.max_step = 1e-2;
    Vec8 x0 = propagate_state(s, 1.0, o).to_vector();
    auto x = [&](double mag) {
        SatelliteState t = SatelliteState::from_vector(s.to_vector() + mag * dir);
        return Vec8(propagate_state(t, 1.0, o).to_vector());
    };
    // even part of the flow: the linear map drops out, leaving the quadratic term
    auto rem = [&](double mag) { return (x(mag) + x(-mag) - 2 * x0).head<3>().norm(); };
    double r4 = rem(4000.0), r2 = rem(2000.0);
    // odd part agrees with F to first order
    Vec8 odd = (x(2000.0) - x(-2000.0)) / 2;
    EXPECT_LT((odd - F * (2000.0 * dir)).head<3>().norm(), 1e-3 * 2000.0);
    EXPECT_NEAR(r4 / r2, 4.0, 0.4);
}

TEST(Transition, J2BudgetDisplacement) {
    EXPECT_NEAR(unmodelled_displacement(5e-5, 10.0), 2.5e-3, 1e-15);
}

TEST(ProcessNoise, ZeroSpec) {
    EXPECT_TRUE(process_noise({0, 0, 0}, 1.0).isZero(0));
}

TEST(ProcessNoise, VrwBlocks) {
    Mat8 Q = process_noise({1.0, 0, 0}, 1.0);
    EXPECT_TRUE((Q.block<3, 3>(0, 0).isApprox(Mat3::Identity() / 3.0, 1e-15)));
    EXPECT_TRUE((Q.block<3, 3>(0, 3).isApprox(Mat3::Identity() / 2.0, 1e-15)));
    EXPECT_TRUE((Q.block<3, 3>(3, 3).isApprox(Mat3::Identity(), 1e-15)));
}

TEST(ProcessNoise, ClockBlockTableValues) {
    Mat8 Q = process_noise(ProcessNoiseSpec{}, 1.0);
    EXPECT_NEAR(Q(6, 6), 8.987551787368e-4, 1e-15);
    EXPECT_NEAR(Q(7, 7), 8.987551787368e-10, 1e-21);
    EXPECT_EQ(Q(6, 7), 0.0);
    EXPECT_EQ(Q(7, 6), 0.0);
}

TEST(ProcessNoise, SymmetricPsdProperty) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        ProcessNoiseSpec spec{std::pow(10.0, -15 + 10 * u(rng)), std::pow(10.0, -24 + 6 * u(rng)),
                              std::pow(10.0, -28 + 6 * u(rng))};
        double dt = 0.01 + 20 * u(rng);
        Mat8 Q = process_noise(spec, dt);
        EXPECT_EQ((Q - Q.transpose()).norm(), 0.0);
        Eigen::SelfAdjointEigenSolver<Mat8> es(Q);
        EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12 * es.eigenvalues().cwiseAbs().maxCoeff());
    }
}

TEST(Propagate, ZeroStepIdentity) {
    SatelliteState s = circular();
    s.clock = {3.0, 0.5};
    SatelliteState t = propagate_state(s, 0.0);
    EXPECT_EQ(t.to_vector(), s.to_vector());
}

TEST(Propagate, ClockAdvances) {
    SatelliteState s = circular();
    s.clock = {3.0, 0.5};
    SatelliteState t = propagate_state(s, 4.0);
    EXPECT_DOUBLE_EQ(t.clock.bias, 5.0);
    EXPECT_DOUBLE_EQ(t.clock.drift, 0.5);
    EXPECT_DOUBLE_EQ(t.epoch, 4.0);
}

TEST(Propagate, FullPeriodTwoBody) {
    SatelliteState s = circular();
    double T = 2 * kPi * std::sqrt(std::pow(kR550, 3) / DynamicsConstants::mu);
    PropagationOptions o;
    o.include_j2 = false;
    o.max_step = 0.5;
    SatelliteState t = propagate_state(s, T, o);
    EXPECT_LT((t.position - s.position).norm(), 1e-3);
}

TEST(Propagate, MatchesKeplerOracle) {
    SatelliteState s = circular(kR550, true);
    s.velocity *= 1.02;  // mildly eccentric
    PropagationOptions o;
    o.include_j2 = false;
    o.max_step = 1e-3;
    SatelliteState t = propagate_state(s, 60.0, o);
    Vec3 r, v;
    kepler_propagate(s.position, s.velocity, 60.0, r, v);
    EXPECT_LT((t.position - r).norm(), 1e-4);
    EXPECT_LT((t.velocity - v).norm(), 1e-7);
}

TEST(Propagate, EnergyConservation) {
    SatelliteState s = circular(kR550, true);
    PropagationOptions o;
    o.max_step = 1e-3;
    double e0 = specific_energy(s.position, s.velocity);
    SatelliteState t = propagate_state(s, 100.0, o);
    double e1 = specific_energy(t.position, t.velocity);
    EXPECT_LT(std::abs((e1 - e0) / e0), 1e-9);
}

TEST(SatelliteStateVector, RoundTrip) {
    Vec8 x;
    x << 1, 2, 3, 4, 5, 6, 7, 8;
    EXPECT_EQ(SatelliteState::from_vector(x).to_vector(), x);
}
