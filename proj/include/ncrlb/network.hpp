#pragma once

#include <Eigen/SparseCore>
#include <cstdint>
#include <string>
#include <vector>

#include "ncrlb/orbit.hpp"

namespace ncrlb {

constexpr double kDefaultIslRange = 8.0e6;  // m

struct Link {
    int tx = 0;
    int rx = 0;
    double distance = 0.0;
    Vec3 los = Vec3::UnitX();  // tx -> rx
};

struct ConstellationGraph {
    std::vector<SatelliteState> satellites;
    std::vector<Link> links;
    double epoch = 0.0;

    int size() const { return static_cast<int>(satellites.size()); }
};

enum class GeometryKind { Planar, Cubic, Random, Octahedral };

GeometryKind parse_geometry_kind(const std::string& s);
std::string to_string(GeometryKind k);

struct GeometrySpec {
    GeometryKind kind = GeometryKind::Planar;
    int count = 4;
    double altitude = 550e3;             // m
    double scale = 1000e3;               // cube edge, octahedron circumradius
    double perturbation_sigma = 100e3;   // m, random kind
    std::uint64_t seed = 0;
    double max_range = kDefaultIslRange; // links are filled with this limit
};

ConstellationGraph generate_geometry(const GeometrySpec& spec);

std::vector<Link> active_links(const ConstellationGraph& g, double max_range);

// ||p_rx - p_tx|| + cb_rx - cb_tx
double toa_measurement(const ConstellationGraph& g, const Link& l);

// state slot layout per satellite: 8 entries [p, v, b, bdot]
inline int state_index(int sat, int slot) { return 8 * sat + slot; }

Eigen::SparseVector<double> measurement_jacobian(const ConstellationGraph& g, const Link& l);

// dense stacked Jacobian, L x 8N
MatX measurement_matrix(const ConstellationGraph& g, const std::vector<Link>& links);

// position-only Jacobian, L x 3N
MatX position_jacobian(const ConstellationGraph& g, const std::vector<Link>& links);

// clock association, L x N, rows e_rx - e_tx
MatX clock_association(int n_sat, const std::vector<Link>& links);

}  // namespace ncrlb
