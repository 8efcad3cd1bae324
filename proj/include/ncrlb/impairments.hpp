#pragma once

#include <string>
#include <vector>

#include "ncrlb/common.hpp"

namespace ncrlb {

struct HardwareProfile {
    std::string name = "custom";
    double gamma_eff = 0.0;
    double sigma_phi_sq = 0.0;  // rad^2
    double noise_figure = 0.0;  // dB

    static HardwareProfile state_of_the_art() { return {"StateOfTheArt", 0.005, 1e-4, 5.0}; }
    static HardwareProfile high_performance() { return {"HighPerformance", 0.01, 1e-3, 7.0}; }
    static HardwareProfile swap_efficient() { return {"SWaPEfficient", 0.045, 1e-2, 10.0}; }
    static HardwareProfile low_cost() { return {"LowCost", 0.05, 1e-1, 12.0}; }
    static std::vector<HardwareProfile> builtins();
    static HardwareProfile by_name(const std::string& name);
};

struct SignalSpec {
    double f_c = 300e9;         // Hz
    double bandwidth = 10e9;    // Hz
    double tx_power = 10.0;     // W
    double tx_gain = 50.0;      // dBi
    double rx_gain = 50.0;      // dBi
    double rms_bandwidth_beta = 0.0;  // Hz, 0 -> bandwidth/sqrt(12)

    double beta() const;
    double wavelength() const { return kSpeedOfLight / f_c; }
    // 1/(8 pi^2 beta^2) [s^2]
    double kappa_wf() const;
};

// mean pointing power loss exp(-sigma^2/theta_3dB^2)
struct PointingLoss {
    bool enabled = true;
    double sigma_theta = 2.8e-3 * kPi / 180.0;   // rad
    double theta_3db = 14e-3 * kPi / 180.0;      // rad

    double factor() const;
};

struct LinkCondition {
    double distance = 0.0;
    double snr0 = 0.0;
    double interference_sum = 0.0;  // noise-normalized
};

enum class Regime { Noise, Hardware, Interference };
std::string to_string(Regime r);

double free_space_path_loss(double distance, double wavelength);

double snr0_link_budget(const SignalSpec& sig, const HardwareProfile& hw, double distance,
                        const PointingLoss& pointing = {});

double sinr_eff(double snr0, const HardwareProfile& hw, double interference_sum);

// TOA variance [m^2]
double meas_variance(const SignalSpec& sig, const HardwareProfile& hw, const LinkCondition& cond);

// variance for a given effective SINR
double ranging_variance(const SignalSpec& sig, double sigma_phi_sq, double sinr);

struct RangingLimits {
    double ceiling = 0.0;    // m
    double floor = 0.0;      // m
    double sigma_min = 0.0;  // m
    double snr_crit = 0.0;   // linear, inf when unbounded
    bool hardware_bounded = true;
};

RangingLimits ranging_limits(const SignalSpec& sig, const HardwareProfile& hw);

// c*sqrt(sigma_phi^2)/(2 pi f_c)
double phase_noise_floor(const SignalSpec& sig, double sigma_phi_sq);

Regime regime_classify(double snr0, const HardwareProfile& hw, double interference_sum);

inline double evm_to_gamma(double evm) { return evm * evm; }

}  // namespace ncrlb
