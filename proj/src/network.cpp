#include "ncrlb/network.hpp"

#include <array>
#include <random>

namespace ncrlb {

namespace {

// tetrahedral subset first so 4-vertex cubes are not coplanar
constexpr std::array<std::array<int, 3>, 8> kCubeVertices{{
    {0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1},
    {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1},
}};

constexpr std::array<std::array<int, 3>, 6> kOctaVertices{{
    {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1},
}};

std::vector<Vec3> ring(int n, double radius) {
    std::vector<Vec3> out;
    for (int i = 0; i < n; ++i) {
        double a = 2.0 * kPi * i / n;
        out.emplace_back(radius * std::cos(a), radius * std::sin(a), 0.0);
    }
    return out;
}

}  // namespace

GeometryKind parse_geometry_kind(const std::string& s) {
    if (s == "planar") return GeometryKind::Planar;
    if (s == "cubic") return GeometryKind::Cubic;
    if (s == "random") return GeometryKind::Random;
    if (s == "octahedral") return GeometryKind::Octahedral;
    throw Error("unknown geometry kind: " + s);
}

std::string to_string(GeometryKind k) {
    switch (k) {
        case GeometryKind::Planar: return "planar";
        case GeometryKind::Cubic: return "cubic";
        case GeometryKind::Random: return "random";
        case GeometryKind::Octahedral: return "octahedral";
    }
    return "?";
}

ConstellationGraph generate_geometry(const GeometrySpec& spec) {
    if (spec.count < 2) throw Error("geometry: count must be >= 2");
    const double r0 = DynamicsConstants::Re + spec.altitude;
    const Vec3 center(r0, 0.0, 0.0);
    std::vector<Vec3> pos;

    switch (spec.kind) {
        case GeometryKind::Planar:
            pos = ring(spec.count, r0);
            break;
        case GeometryKind::Random: {
            pos = ring(spec.count, r0);
            std::mt19937_64 rng(spec.seed);
            std::normal_distribution<double> nd(0.0, spec.perturbation_sigma);
            for (auto& p : pos)
                for (int k = 0; k < 3; ++k) p(k) += nd(rng);
            break;
        }
        case GeometryKind::Cubic:
            if (spec.count > 8) throw Error("cubic geometry supports at most 8 satellites");
            for (int i = 0; i < spec.count; ++i) {
                const auto& v = kCubeVertices[i];
                pos.push_back(center + spec.scale * Vec3(v[0] - 0.5, v[1] - 0.5, v[2] - 0.5));
            }
            break;
        case GeometryKind::Octahedral:
            if (spec.count > 6) throw Error("octahedral geometry supports at most 6 satellites");
            for (int i = 0; i < spec.count; ++i) {
                const auto& v = kOctaVertices[i];
                pos.push_back(center + spec.scale * Vec3(v[0], v[1], v[2]));
            }
            break;
    }

    ConstellationGraph g;
    for (const auto& p : pos) {
        SatelliteState s;
        s.position = p;
        s.velocity = circular_velocity(p);
        g.satellites.push_back(s);
    }
    g.links = active_links(g, spec.max_range);
    return g;
}

std::vector<Link> active_links(const ConstellationGraph& g, double max_range) {
    if (!(max_range > 0.0)) throw Error("active_links: max_range must be positive");
    std::vector<Link> out;
    const int n = g.size();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Vec3 d = g.satellites[j].position - g.satellites[i].position;
            double dist = d.norm();
            if (dist > max_range || dist <= 0.0) continue;
            out.push_back({i, j, dist, d / dist});
        }
    }
    return out;
}

double toa_measurement(const ConstellationGraph& g, const Link& l) {
    const auto& a = g.satellites.at(l.tx);
    const auto& b = g.satellites.at(l.rx);
    return (b.position - a.position).norm() + b.clock.bias - a.clock.bias;
}

Eigen::SparseVector<double> measurement_jacobian(const ConstellationGraph& g, const Link& l) {
    const Vec3 d = g.satellites.at(l.rx).position - g.satellites.at(l.tx).position;
    const double dist = d.norm();
    if (dist < 1.0) throw Error("degenerate LOS");
    const Vec3 u = d / dist;
    Eigen::SparseVector<double> h(8 * g.size());
    h.reserve(8);
    int lo = std::min(l.tx, l.rx);
    int hi = std::max(l.tx, l.rx);
    // insert in increasing index order
    for (int sat : {lo, hi}) {
        double sgn = (sat == l.rx) ? 1.0 : -1.0;
        for (int k = 0; k < 3; ++k) h.insert(state_index(sat, k)) = sgn * u(k);
        h.insert(state_index(sat, 6)) = sgn;
    }
    return h;
}

MatX measurement_matrix(const ConstellationGraph& g, const std::vector<Link>& links) {
    MatX H = MatX::Zero(static_cast<Eigen::Index>(links.size()), 8 * g.size());
    for (std::size_t i = 0; i < links.size(); ++i)
        H.row(static_cast<Eigen::Index>(i)) = VecX(measurement_jacobian(g, links[i])).transpose();
    return H;
}

MatX position_jacobian(const ConstellationGraph& g, const std::vector<Link>& links) {
    MatX H = MatX::Zero(static_cast<Eigen::Index>(links.size()), 3 * g.size());
    for (std::size_t i = 0; i < links.size(); ++i) {
        const auto& l = links[i];
        Vec3 u = (g.satellites[l.rx].position - g.satellites[l.tx].position).normalized();
        auto r = static_cast<Eigen::Index>(i);
        H.block<1, 3>(r, 3 * l.tx) = -u.transpose();
        H.block<1, 3>(r, 3 * l.rx) = u.transpose();
    }
    return H;
}

MatX clock_association(int n_sat, const std::vector<Link>& links) {
    MatX A = MatX::Zero(static_cast<Eigen::Index>(links.size()), n_sat);
    for (std::size_t i = 0; i < links.size(); ++i) {
        A(static_cast<Eigen::Index>(i), links[i].rx) = 1.0;
        A(static_cast<Eigen::Index>(i), links[i].tx) = -1.0;
    }
    return A;
}

}  // namespace ncrlb
