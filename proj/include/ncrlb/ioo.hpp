#pragma once

#include "ncrlb/impairments.hpp"

namespace ncrlb {

struct BistaticGeometry {
    Vec3 tx_pos = Vec3::Zero();
    Vec3 rx_pos = Vec3::Zero();
    Vec3 target_pos = Vec3::Zero();
};

struct EchoBudget {
    double tx_power = 10.0;           // W
    double tx_gain = 1e5;             // linear, toward target
    double rx_gain = 1e5;             // linear, toward target
    double rcs_sigma_b = 1.0;         // m^2
    double wavelength = 1e-3;         // m
    double processing_loss = 1.0;     // linear
    double effective_noise = 1e-10;   // W
    double processing_gain = 0.0;     // dB
};

double bistatic_range(const BistaticGeometry& g);
Vec3 bistatic_gradient(const BistaticGeometry& g);
double bistatic_angle(const BistaticGeometry& g);

double bistatic_sinr(const BistaticGeometry& g, const EchoBudget& e);

// sigma_Rb^2 [m^2]
double bistatic_range_variance(const BistaticGeometry& g, const SignalSpec& sig,
                               const HardwareProfile& hw, const EchoBudget& e);

Mat3 ioo_fim(const BistaticGeometry& g, const SignalSpec& sig, const HardwareProfile& hw,
             const EchoBudget& e);

struct IooFusion {
    Mat3 posterior = Mat3::Zero();
    double volume_ratio = 1.0;
    double info_gain_db = 0.0;       // determinant ratio
    double trace_gain_db = 0.0;      // trace ratio
    double weak_axis_gain_db = 0.0;  // smallest eigenvalue ratio
    bool singular_prior = false;
};

// rank-1 fusion of a range measurement with gradient grad and variance sigma_sq
IooFusion fuse_rank1(const Mat3& prior, const Vec3& grad, double sigma_sq);

IooFusion fuse_ioo(const Mat3& prior, const BistaticGeometry& g, const SignalSpec& sig,
                   const HardwareProfile& hw, const EchoBudget& e);

// 1-sigma semi-axes of the error ellipsoid, descending
Vec3 ellipsoid_axes(const Mat3& fim);

struct IooScenario {
    BistaticGeometry geometry;
    SignalSpec signal;
    HardwareProfile hardware;
    EchoBudget echo;
    Mat3 prior = Mat3::Identity();
};

// minimum processing gain [dB] for the echo to add target_gain_db of information.
// = 10log10(L_bistatic N_eff / (sigma_b G_T G_R)) + utility term; inf if unreachable
double pg_threshold(const IooScenario& s, double target_gain_db);

bool ioo_crossover(const Mat3& j_ioo, const Mat3& j_prior, double alpha_lm, double sinr_comm);

}  // namespace ncrlb
