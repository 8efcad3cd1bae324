#include <gtest/gtest.h>

#include <random>

#include "ncrlb/ioo.hpp"

using namespace ncrlb;

namespace {

BistaticGeometry example() {
    return {Vec3(0, 0, 0), Vec3(2e3, 0, 0), Vec3(1e3, 1e3, 0)};
}

EchoBudget budget() {
    EchoBudget e;
    e.tx_power = 10;
    e.tx_gain = 1e5;
    e.rx_gain = 1e5;
    e.rcs_sigma_b = 1;
    e.wavelength = 1e-3;
    e.processing_loss = 1;
    e.effective_noise = 1e-12;
    e.processing_gain = 70;
    return e;
}

}  // namespace

TEST(Bistatic, RangeExample) {
    EXPECT_NEAR(bistatic_range(example()), 2 * std::sqrt(2.0) * 1e3, 1e-9);
    BistaticGeometry on{Vec3(0, 0, 0), Vec3(2e3, 0, 0), Vec3(700, 0, 0)};
    EXPECT_NEAR(bistatic_range(on), 2e3, 1e-12);
}

TEST(Bistatic, EllipsoidFocalSum) {
    Vec3 f1(-3e3, 0, 0), f2(3e3, 0, 0);
    double a = 5e3, b = 4e3;  // c = 3e3
    std::mt19937_64 rng(100);
    std::uniform_real_distribution<double> u(0, 2 * kPi), v(-1, 1);
    for (int i = 0; i < 100; ++i) {
        double t = u(rng), z = v(rng), s = std::sqrt(1 - z * z);
        Vec3 p(a * s * std::cos(t), b * s * std::sin(t), b * z);
        EXPECT_NEAR(bistatic_range({f1, f2, p}), 2 * a, 1e-8);
    }
}

TEST(Bistatic, GradientExample) {
    Vec3 g = bistatic_gradient(example());
    EXPECT_NEAR(g.x(), 0.0, 1e-15);
    EXPECT_NEAR(g.y(), std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(g.squaredNorm(), 2.0, 1e-14);
    EXPECT_NEAR(bistatic_angle(example()), kPi / 2, 1e-15);
}

TEST(Bistatic, MonostaticAndForwardScatter) {
    BistaticGeometry mono{Vec3(0, 0, 0), Vec3(1e-3, 0, 0), Vec3(0, 5e5, 0)};
    EXPECT_NEAR(bistatic_gradient(mono).norm(), 2.0, 1e-9);
    BistaticGeometry fwd{Vec3(0, 0, 0), Vec3(2e3, 0, 0), Vec3(1e3, 0, 0)};
    EXPECT_NEAR(bistatic_gradient(fwd).norm(), 0.0, 1e-15);
}

TEST(Bistatic, GradientNormIdentity) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd(0, 1e5);
    for (int i = 0; i < 50; ++i) {
        BistaticGeometry g{Vec3(nd(rng), nd(rng), nd(rng)), Vec3(nd(rng), nd(rng), nd(rng)), Vec3(nd(rng), nd(rng), nd(rng))};
        EXPECT_NEAR(bistatic_gradient(g).squaredNorm(), 2 * (1 + std::cos(bistatic_angle(g))), 1e-12);
    }
}

TEST(Bistatic, CoincidentTargetThrows) {
    BistaticGeometry g{Vec3(0, 0, 0), Vec3(1e3, 0, 0), Vec3(0.5, 0, 0)};
    EXPECT_THROW(bistatic_gradient(g), Error);
}

TEST(Bistatic, GradientFiniteDifference) {
    BistaticGeometry g{Vec3(-4e5, 1e5, 2e4), Vec3(3e5, -2e5, 5e4), Vec3(1e4, 3e5, -1e4)};
    Vec3 grad = bistatic_gradient(g);
    for (int i = 0; i < 3; ++i) {
        BistaticGeometry a = g, b = g;
        a.target_pos(i) += 0.1;
        b.target_pos(i) -= 0.1;
        EXPECT_NEAR((bistatic_range(a) - bistatic_range(b)) / 0.2, grad(i), 1e-9 * 1e3);
    }
}

TEST(Sinr, RadarEquationScaling) {
    BistaticGeometry g = example();
    EchoBudget e = budget();
    double s0 = bistatic_sinr(g, e);
    BistaticGeometry far = g;
    far.rx_pos *= 2;
    far.target_pos *= 2;
    EXPECT_NEAR(lin_to_db(bistatic_sinr(far, e) / s0), -40 * std::log10(2.0), 1e-10);
    EchoBudget half = e;
    half.rcs_sigma_b = 0.5;
    EXPECT_NEAR(lin_to_db(bistatic_sinr(g, half) / s0), -3.0103, 1e-4);
    double num = 10 * 1e5 * 1e5 * 1e-6 / (std::pow(4 * kPi, 3) * 2e6 * 2e6 * 1e-12) * 1e7;
    EXPECT_NEAR(s0 / num, 1.0, 1e-12);
}

TEST(Fim, RankOneEigenvalue) {
    BistaticGeometry g{Vec3(-4e5, 1e5, 0), Vec3(3e5, -2e5, 0), Vec3(1e4, 3e5, 0)};
    SignalSpec sig;
    auto hw = HardwareProfile::high_performance();
    EchoBudget e = budget();
    Mat3 J = ioo_fim(g, sig, hw, e);
    double var = bistatic_range_variance(g, sig, hw, e);
    Eigen::SelfAdjointEigenSolver<Mat3> es(J);
    double beta = bistatic_angle(g);
    EXPECT_NEAR(es.eigenvalues()(2), 2 * (1 + std::cos(beta)) / var, 1e-10 * es.eigenvalues()(2));
    EXPECT_LT(std::abs(es.eigenvalues()(1)), 1e-12 * es.eigenvalues()(2));
    EXPECT_NEAR(J.trace(), bistatic_gradient(g).squaredNorm() / var, 1e-12 * J.trace());
}

TEST(Fusion, VolumeRatioExample) {
    auto f = fuse_rank1(Mat3::Identity(), Vec3(1, 1, 1), 1.0);
    EXPECT_NEAR(f.volume_ratio, 0.5, 1e-15);
    EXPECT_NEAR(f.info_gain_db, lin_to_db(4.0), 1e-12);
}

TEST(Fusion, WeakAxisAlignmentWins) {
    Mat3 prior = Vec3(1 / (3.2 * 3.2), 1 / 0.09, 1 / 0.09).asDiagonal();
    auto weak = fuse_rank1(prior, Vec3(1.4, 0, 0), 4.0);
    auto strong = fuse_rank1(prior, Vec3(0, 1.4, 0), 4.0);
    EXPECT_GT(weak.info_gain_db, strong.info_gain_db);
    EXPECT_LT(weak.volume_ratio, strong.volume_ratio);
}

TEST(Fusion, DeterminantLemmaProperty) {
    std::mt19937_64 rng(60);
    std::normal_distribution<double> nd;
    for (int i = 0; i < 50; ++i) {
        Mat3 A;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) A(r, c) = nd(rng);
        Mat3 prior = A * A.transpose() + 0.05 * Mat3::Identity();
        Vec3 g(nd(rng), nd(rng), nd(rng));
        double var = 0.1 + std::abs(nd(rng));
        auto f = fuse_rank1(prior, g, var);
        EXPECT_NEAR(f.volume_ratio, std::sqrt(prior.determinant() / f.posterior.determinant()), 1e-10);
        EXPECT_GT(f.volume_ratio, 0.0);
        EXPECT_LE(f.volume_ratio, 1.0);
        EXPECT_GE(f.posterior.determinant(), prior.determinant());
    }
}

TEST(Fusion, SingularPriorFlagged) {
    Mat3 prior = Vec3(1, 1, 0).asDiagonal();
    auto f = fuse_rank1(prior, Vec3(1, 0, 0), 1.0);
    EXPECT_TRUE(f.singular_prior);
    EXPECT_NEAR(f.volume_ratio, 1 / std::sqrt(2.0), 1e-12);
}

TEST(Fusion, EllipsoidAxes) {
    Mat3 prior = Vec3(1 / (3.2 * 3.2), 1 / 0.09, 1 / 0.09).asDiagonal();
    Vec3 ax = ellipsoid_axes(prior);
    EXPECT_NEAR(ax(0), 3.2, 1e-12);
    EXPECT_NEAR(ax(1), 0.3, 1e-12);
    EXPECT_NEAR(ax(2), 0.3, 1e-12);
}

TEST(Threshold, AntennaLinearity) {
    IooScenario s;
    s.geometry = {Vec3(-3.5e5, -3.5e5, 0), Vec3(-3.5e5, 3.5e5, 0), Vec3::Zero()};
    s.hardware = HardwareProfile::high_performance();
    s.prior = Vec3(1 / (3.2 * 3.2), 1 / 0.09, 1 / 0.09).asDiagonal();
    s.echo = budget();
    s.echo.effective_noise = 4e-10;
    double a = pg_threshold(s, 3.0);
    s.echo.tx_gain *= 10;
    EXPECT_NEAR(pg_threshold(s, 3.0), a - 10.0, 1e-9);
    EXPECT_TRUE(std::isinf(pg_threshold(s, 1000.0)));
    EXPECT_LT(pg_threshold(s, 3.0), pg_threshold(s, 6.0));
}

TEST(Threshold, ReachesTargetGain) {
    // processing exactly the threshold gain delivers the requested utility
    IooScenario s;
    s.geometry = {Vec3(-3.5e5, -3.5e5, 0), Vec3(-3.5e5, 3.5e5, 0), Vec3::Zero()};
    s.hardware = HardwareProfile::high_performance();
    s.prior = Vec3(1 / (3.2 * 3.2), 1 / 0.09, 1 / 0.09).asDiagonal();
    s.echo = budget();
    s.echo.effective_noise = 4e-10;
    s.echo.processing_gain = pg_threshold(s, 3.0);
    auto f = fuse_ioo(s.prior, s.geometry, s.signal, s.hardware, s.echo);
    EXPECT_NEAR(f.info_gain_db, 3.0, 1e-9);
}

TEST(Crossover, Inequality) {
    Mat3 prior = Vec3(0.1, 10, 10).asDiagonal();
    Mat3 j = Vec3(0.5, 0, 0).asDiagonal();
    EXPECT_TRUE(ioo_crossover(j, prior, 1e-2, 100.0));
    EXPECT_FALSE(ioo_crossover(1e-6 * j, prior, 1e-2, 100.0));
}
