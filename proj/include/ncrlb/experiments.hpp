#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ncrlb/fusion.hpp"
#include "ncrlb/interference.hpp"
#include "ncrlb/ioo.hpp"
#include "ncrlb/orbit.hpp"

namespace ncrlb {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

class ConfigError : public Error {
public:
    using Error::Error;
};

struct CeilingStudyConfig {
    double snr_db_min = 0.0;
    double snr_db_max = 60.0;
    double snr_db_step = 0.1;
    std::vector<std::string> profiles{"StateOfTheArt", "HighPerformance", "SWaPEfficient", "LowCost"};
};

struct FloorStudyConfig {
    std::vector<double> sigma_phi_sq{1e-4, 1e-3, 1e-2, 0.1, 1.0};
    std::vector<double> carriers{300e9, 150e9};
    double snr_db_min = 0.0;
    double snr_db_max = 80.0;
    double snr_db_step = 1.0;
    double asymptote_snr = 1e12;
};

enum class ClockModel { Synchronized, Estimated };

struct GeometryStudyConfig {
    std::vector<int> counts{4, 5, 6, 7, 8};
    std::vector<std::string> kinds{"planar", "cubic", "random"};
    ClockModel clock_model = ClockModel::Synchronized;
};

struct RegimeStudyConfig {
    double snr_db_min = -10.0;
    double snr_db_max = 60.0;
    double snr_db_step = 0.5;
    double log10_gamma_min = -4.0;
    double log10_gamma_max = -0.5;
    double log10_gamma_step = 0.05;
    std::vector<double> alpha_levels{1e-3, 1e-2, 1e-1, 1.0};  // signal-normalized
    double contour_rmse = 1.1e-3;                             // m
};

struct CorrelationStudyConfig {
    GeometrySpec geometry{GeometryKind::Octahedral, 6, 550e3, 1000e3, 100e3, 0, kDefaultIslRange};
    double rho_min = 0.0;
    double rho_max = 0.96;
    double rho_step = 0.04;
    double sigma_sq = 1.0;       // sigma_local^2 + sigma_clk^2, m^2
    double info_rho = 0.9;       // operating point for information per DoF
    std::vector<int> scaling_counts{4, 5, 6, 7, 8};
};

struct IooStudyConfig {
    Vec3 prior_axes{3.2, 0.3, 0.3};   // m, first = weak axis
    double target_major_axis = 1.7;   // m, posterior weak-axis target
    double bistatic_angle_deg = 90.0;
    double target_range = 500e3;      // m, equal tx and rx ranges
    double rcs = 1.0;                 // m^2
    double processing_loss_db = 0.0;
    double calibration_gain_db = 3.0; // utility level pinned to calibration_pg_db
    double calibration_pg_db = 65.0;
    std::vector<double> threshold_gains_db{3.0, 6.0};
    double pg_db_min = 50.0;
    double pg_db_max = 85.0;
    double pg_db_step = 0.5;
    double alpha_lm = 1e-2;           // crossover check
    double sinr_comm_db = 20.0;
};

struct ScenarioConfig {
    GeometrySpec geometry{GeometryKind::Cubic, 8, 550e3, 1000e3, 100e3, 0, kDefaultIslRange};
    SignalSpec signal;
    HardwareProfile hardware = HardwareProfile::high_performance();
    PointingJitter jitter{2.8e-3 * kPi / 180.0};
    double beam_theta = 14e-3 * kPi / 180.0;  // angular scale for interference, rad
    ProcessNoiseSpec noise;
    int realizations = 1000;
    std::uint64_t seed = 42;
    std::string output_path = "results";
    std::string output_format = "csv";

    CeilingStudyConfig ceiling;
    FloorStudyConfig floor;
    GeometryStudyConfig geometry_study;
    RegimeStudyConfig regime;
    CorrelationStudyConfig correlation;
    IooStudyConfig ioo;
};

// strict parse: unknown keys and wrong types throw ConfigError; missing keys keep defaults
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);
std::string config_to_json(const ScenarioConfig& cfg);
std::uint64_t config_hash(const ScenarioConfig& cfg);

using Cell = std::variant<double, std::int64_t, std::string>;

struct Column {
    std::string name;
    std::string unit;
};

struct ResultTable {
    std::string id;
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    std::string version = kToolVersion;

    int column(const std::string& name) const;
    double value(std::size_t row, const std::string& name) const;
    std::string text(std::size_t row, const std::string& name) const;
};

std::string to_csv(const ResultTable& t);
std::string to_json(const ResultTable& t);

std::vector<ResultTable> run_hw_ceiling_study(const ScenarioConfig& cfg);
std::vector<ResultTable> run_pn_floor_study(const ScenarioConfig& cfg);
std::vector<ResultTable> run_geometry_study(const ScenarioConfig& cfg);
std::vector<ResultTable> run_regime_map(const ScenarioConfig& cfg);
std::vector<ResultTable> run_correlation_study(const ScenarioConfig& cfg);
std::vector<ResultTable> run_ioo_study(const ScenarioConfig& cfg);

std::vector<std::string> study_names();
std::vector<ResultTable> run_study(const std::string& name, const ScenarioConfig& cfg);

// ---- helpers shared with tests ----

// knee of log10(rmse) vs snr_db by maximum curvature, refined parabolically
double knee_snr_db(const std::vector<double>& snr_db, const std::vector<double>& rmse);

// SNR [dB] where rmse equals target at given gamma; nullopt if unreachable
std::optional<double> contour_snr_db(const SignalSpec& sig, double sigma_phi_sq, double gamma,
                                     double alpha, double target_rmse);

// |dSNR_dB / dlog10 Gamma| on the contour where it crosses SNR0 = 1/Gamma
double contour_exchange_rate(const SignalSpec& sig, double sigma_phi_sq, double alpha,
                             double target_rmse, double dlog = 0.01);

// 10log10 of the mean information per DoF of J on the subspace spanned by basis columns
double information_per_dof_db(const MatX& J, const MatX& basis);

// orthonormal basis of the range of a symmetric PSD matrix
MatX range_basis(const MatX& M, double rel_tol = 1e-9);

struct CorrelationPoint {
    double rho = 0.0;
    double info_per_dof_db = 0.0;
    double info_loss_db = 0.0;
    double crlb_trace = 0.0;
    double degradation = 1.0;
    double penalty = 1.0;
    double rmse_penalty = 1.0;
};

std::vector<CorrelationPoint> correlation_sweep(const ConstellationGraph& g,
                                                const std::vector<double>& rhos, double sigma_sq);

struct IooReconstruction {
    IooScenario scenario;
    double sigma_rb = 0.0;
    double operating_sinr = 0.0;  // linear, echo SINR after processing gain
    double operating_pg_db = 0.0;
    double raw_sinr_db = 0.0;     // before processing gain
    double n_eff = 0.0;           // W
    double thermal_noise = 0.0;   // W
};

IooReconstruction reconstruct_ioo(const ScenarioConfig& cfg);

// exit codes: 0 ok, 1 runtime error, 2 config/usage error
int cli_main(int argc, char** argv);

}  // namespace ncrlb
