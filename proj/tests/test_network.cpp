#include <gtest/gtest.h>

#include "ncrlb/network.hpp"

using namespace ncrlb;

namespace {

ConstellationGraph pair_graph(const Vec3& a, const Vec3& b) {
    ConstellationGraph g;
    g.satellites.resize(2);
    g.satellites[0].position = a;
    g.satellites[1].position = b;
    g.links = active_links(g, 8e6);
    return g;
}

}  // namespace

TEST(Geometry, PlanarFourIsSquare) {
    GeometrySpec s;
    s.kind = GeometryKind::Planar;
    s.count = 4;
    ConstellationGraph g = generate_geometry(s);
    ASSERT_EQ(g.size(), 4);
    for (int i = 0; i < 4; ++i) {
        const Vec3& a = g.satellites[i].position;
        const Vec3& b = g.satellites[(i + 1) % 4].position;
        EXPECT_NEAR(a.z(), g.satellites[0].position.z(), 1e-9);
        EXPECT_NEAR(a.dot(b) / a.squaredNorm(), 0.0, 1e-12);
        EXPECT_NEAR(a.norm(), DynamicsConstants::Re + 550e3, 1e-6);
        EXPECT_EQ(g.satellites[i].clock.bias, 0.0);
        EXPECT_NEAR(g.satellites[i].velocity.dot(a), 0.0, 1e-3);
    }
}

TEST(Geometry, CubeEdges) {
    GeometrySpec s;
    s.kind = GeometryKind::Cubic;
    s.count = 8;
    ConstellationGraph g = generate_geometry(s);
    for (int i = 0; i < 8; ++i) {
        double nearest = 1e30;
        for (int j = 0; j < 8; ++j)
            if (i != j) nearest = std::min(nearest, (g.satellites[i].position - g.satellites[j].position).norm());
        EXPECT_NEAR(nearest, 1000e3, 1e-6);
    }
    EXPECT_EQ(g.links.size(), 28u);
}

TEST(Geometry, CubeTooManyThrows) {
    GeometrySpec s;
    s.kind = GeometryKind::Cubic;
    s.count = 9;
    EXPECT_THROW(generate_geometry(s), Error);
}

TEST(Geometry, CountBelowTwoThrows) {
    GeometrySpec s;
    s.count = 1;
    EXPECT_THROW(generate_geometry(s), Error);
}

TEST(Geometry, RandomIsSeeded) {
    GeometrySpec s;
    s.kind = GeometryKind::Random;
    s.count = 6;
    s.seed = 11;
    auto a = generate_geometry(s), b = generate_geometry(s);
    for (int i = 0; i < 6; ++i) EXPECT_EQ(a.satellites[i].position, b.satellites[i].position);
    s.seed = 12;
    auto c = generate_geometry(s);
    EXPECT_NE(a.satellites[0].position, c.satellites[0].position);
}

TEST(Geometry, OctahedronAllPairsLinked) {
    GeometrySpec s;
    s.kind = GeometryKind::Octahedral;
    s.count = 6;
    ConstellationGraph g = generate_geometry(s);
    EXPECT_EQ(g.links.size(), 15u);
    Vec3 c = Vec3::Zero();
    for (const auto& sat : g.satellites) c += sat.position / 6.0;
    for (const auto& sat : g.satellites) EXPECT_NEAR((sat.position - c).norm(), 1000e3, 1e-6);
}

TEST(ActiveLinks, RangeLimit) {
    ConstellationGraph g = pair_graph(Vec3(7e6, 0, 0), Vec3(0, 0, 0));
    EXPECT_EQ(active_links(g, 8e6).size(), 1u);
    EXPECT_EQ(active_links(g, 5e6).size(), 0u);
}

TEST(ActiveLinks, CubeEdgesOnly) {
    GeometrySpec s;
    s.kind = GeometryKind::Cubic;
    s.count = 8;
    ConstellationGraph g = generate_geometry(s);
    auto links = active_links(g, 1100e3);
    // brute force over the 28 pairs
    int expect = 0;
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            if ((g.satellites[i].position - g.satellites[j].position).norm() <= 1100e3) ++expect;
    EXPECT_EQ(expect, 12);
    EXPECT_EQ(static_cast<int>(links.size()), expect);
}

TEST(ActiveLinks, OrderedAndUnit) {
    GeometrySpec s;
    s.kind = GeometryKind::Random;
    s.count = 8;
    s.seed = 3;
    s.max_range = 2e7;
    ConstellationGraph g = generate_geometry(s);
    auto links = g.links;
    for (std::size_t k = 0; k < links.size(); ++k) {
        EXPECT_LT(links[k].tx, links[k].rx);
        EXPECT_NEAR(links[k].los.norm(), 1.0, 1e-12);
        EXPECT_GT(links[k].distance, 0.0);
        if (k) {
            auto a = std::make_pair(links[k - 1].tx, links[k - 1].rx);
            auto b = std::make_pair(links[k].tx, links[k].rx);
            EXPECT_LT(a, b);
        }
    }
    // reversing node order gives the same pair set
    ConstellationGraph r = g;
    std::reverse(r.satellites.begin(), r.satellites.end());
    auto rl = active_links(r, 2e7);
    ASSERT_EQ(rl.size(), links.size());
}

TEST(Toa, GeometricAndClock) {
    ConstellationGraph g = pair_graph(Vec3(0, 0, 0), Vec3(1000, 0, 0));
    ASSERT_EQ(g.links.size(), 1u);
    EXPECT_DOUBLE_EQ(toa_measurement(g, g.links[0]), 1000.0);
    g.satellites[1].clock.bias = 1.0;
    EXPECT_DOUBLE_EQ(toa_measurement(g, g.links[0]), 1001.0);
}

TEST(Toa, SwapRoles) {
    ConstellationGraph g = pair_graph(Vec3(0, 0, 0), Vec3(1000, 0, 0));
    g.satellites[1].clock.bias = 1.0;
    Link l = g.links[0];
    Link s = l;
    std::swap(s.tx, s.rx);
    s.los = -l.los;
    EXPECT_DOUBLE_EQ(toa_measurement(g, s), 999.0);
    g.satellites[1].clock.bias = 0.0;
    EXPECT_DOUBLE_EQ(toa_measurement(g, s), toa_measurement(g, l));
}

TEST(Jacobian, AxisExample) {
    ConstellationGraph g = pair_graph(Vec3(0, 0, 0), Vec3(1000e3, 0, 0));
    VecX h = VecX(measurement_jacobian(g, g.links[0]));
    EXPECT_EQ(h.size(), 16);
    EXPECT_DOUBLE_EQ(h(0), -1.0);
    EXPECT_DOUBLE_EQ(h(8), 1.0);
    EXPECT_DOUBLE_EQ(h(6), -1.0);
    EXPECT_DOUBLE_EQ(h(14), 1.0);
}

TEST(Jacobian, DegenerateLos) {
    ConstellationGraph g = pair_graph(Vec3(0, 0, 0), Vec3(0.5, 0, 0));
    Link l{0, 1, 0.5, Vec3::UnitX()};
    EXPECT_THROW(measurement_jacobian(g, l), Error);
}

TEST(Jacobian, StructureAndFiniteDifference) {
    GeometrySpec s;
    s.kind = GeometryKind::Random;
    s.count = 5;
    s.seed = 9;
    s.max_range = 2e7;
    ConstellationGraph g = generate_geometry(s);
    for (int i = 0; i < g.size(); ++i) g.satellites[i].clock.bias = 10.0 * i - 7.0;
    for (const auto& l : g.links) {
        auto sp = measurement_jacobian(g, l);
        EXPECT_EQ(sp.nonZeros(), 8);
        VecX h = VecX(sp);
        EXPECT_LT((h.segment<3>(8 * l.tx) + h.segment<3>(8 * l.rx)).norm(), 1e-15);
        double clock_sum = 0;
        for (int i = 0; i < g.size(); ++i) {
            clock_sum += h(8 * i + 6);
            EXPECT_EQ(h.segment<3>(8 * i + 3).norm(), 0.0);
            EXPECT_EQ(h(8 * i + 7), 0.0);
        }
        EXPECT_EQ(clock_sum, 0.0);
        for (int k = 0; k < 8 * g.size(); ++k) {
            auto sat = k / 8, slot = k % 8;
            if (slot >= 3 && slot < 6) continue;
            if (slot == 7) continue;
            auto perturbed = [&](double eps) {
                ConstellationGraph q = g;
                Vec8 x = q.satellites[sat].to_vector();
                x(slot) += eps;
                q.satellites[sat] = SatelliteState::from_vector(x);
                return toa_measurement(q, l);
            };
            double fd = (perturbed(0.1) - perturbed(-0.1)) / 0.2;
            EXPECT_NEAR(fd, h(k), 1e-9 * std::max(1.0, std::abs(h(k))) + 5e-8) << "slot " << k;
        }
    }
}

TEST(Matrices, ClockAssociationRows) {
    GeometrySpec s;
    s.kind = GeometryKind::Cubic;
    s.count = 5;
    ConstellationGraph g = generate_geometry(s);
    MatX A = clock_association(g.size(), g.links);
    MatX H = measurement_matrix(g, g.links);
    MatX P = position_jacobian(g, g.links);
    ASSERT_EQ(A.rows(), static_cast<Eigen::Index>(g.links.size()));
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
        EXPECT_DOUBLE_EQ(A.row(r).sum(), 0.0);
        EXPECT_DOUBLE_EQ(A.row(r).cwiseAbs().sum(), 2.0);
        for (int i = 0; i < g.size(); ++i) {
            EXPECT_EQ(H(r, 8 * i + 6), A(r, i));
            EXPECT_EQ(H.row(r).segment<3>(8 * i), P.row(r).segment<3>(3 * i));
        }
    }
}

TEST(GeometryKindNames, RoundTrip) {
    for (auto k : {GeometryKind::Planar, GeometryKind::Cubic, GeometryKind::Random, GeometryKind::Octahedral})
        EXPECT_EQ(parse_geometry_kind(to_string(k)), k);
    EXPECT_THROW(parse_geometry_kind("hexagonal"), Error);
}
