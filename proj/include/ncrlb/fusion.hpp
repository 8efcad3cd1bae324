#pragma once

#include <vector>

#include "ncrlb/impairments.hpp"
#include "ncrlb/network.hpp"

namespace ncrlb {

enum class SlotKind { Kinematic, Clock };

struct InformationState {
    MatX J;
    VecX y;
    double epoch = 0.0;
    std::vector<SlotKind> partition;

    int dim() const { return static_cast<int>(J.rows()); }

    // no-prior state for n satellites, 8 slots each
    static InformationState zero(int n_sat, double epoch = 0.0);
    static InformationState from(const MatX& J, const VecX& y, std::vector<SlotKind> partition = {});
};

std::vector<SlotKind> satellite_partition(int n_sat);

struct PredictOptions {
    bool regularize = true;
    double epsilon = 1e-10;  // relative to trace/dim
};

InformationState if_predict(const InformationState& s, const MatX& F, const MatX& Q,
                            const PredictOptions& opt = {});

struct LinkMeasurement {
    VecX h;             // dense Jacobian row
    double variance = 1.0;
    double z = 0.0;
};

InformationState if_update_independent(const InformationState& s,
                                       const std::vector<LinkMeasurement>& links);

struct SharedNoiseTerm {
    double variance = 0.0;
    MatX association;  // L x N, rows e_j - e_i
};

struct NoiseCovariance {
    VecX local_diag;
    std::vector<SharedNoiseTerm> shared;

    int size() const { return static_cast<int>(local_diag.size()); }
    MatX dense() const;
};

MatX woodbury_inverse(const NoiseCovariance& c);

InformationState if_update_correlated(const InformationState& s, const MatX& H,
                                      const NoiseCovariance& c, const VecX& z);

// H^T H / c^2 [kappa Gamma e^{sigma_phi^2} + sigma_phi^2/(2 pi f_c)^2]
MatX saturated_link_fim(const VecX& h, const SignalSpec& sig, const HardwareProfile& hw);

enum class ClockTreatment { Marginalize, Known };

// kinematic-slot EFIM, Schur complement with pseudo-inverse clock block
MatX efim_marginalize(const InformationState& s,
                      ClockTreatment clocks = ClockTreatment::Marginalize);

MatX pseudo_inverse_sym(const MatX& M, double rel_tol = 1e-10);
int numeric_rank(const MatX& M, double rel_tol = 1e-9);

MatX clock_fim_structure(const ConstellationGraph& g, double per_link_clock_info);

struct DopReport {
    double gdop = 0.0;
    double hdop = 0.0;
    double vdop = 0.0;
    double vdop_hdop_ratio = 0.0;
    double min_efim_eigenvalue = 0.0;
    double position_crlb_trace = 0.0;
    bool singular = false;
    int deficient_satellite = -1;
    Vec3 deficient_direction = Vec3::Zero();
    std::vector<double> satellite_gdop;
};

// efim: 3N (positions) or 6N (positions+velocities) kinematic EFIM, unit-variance scaling
DopReport dop_metrics(const MatX& efim, const ConstellationGraph& g);

struct SandwichResult {
    MatX cov_true;
    MatX gls;
    double penalty = 1.0;       // trace ratio
    double rmse_penalty = 1.0;  // sqrt of trace ratio
};

SandwichResult mismodel_sandwich(const MatX& H, const NoiseCovariance& c_true, const VecX& w_assumed);

// H restricted to its row space (drops unobservable gauge directions)
MatX reduce_to_row_space(const MatX& H, double rel_tol = 1e-9);

}  // namespace ncrlb
