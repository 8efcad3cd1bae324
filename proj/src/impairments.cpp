#include "ncrlb/impairments.hpp"

#include <cmath>
#include <limits>

namespace ncrlb {

std::vector<HardwareProfile> HardwareProfile::builtins() {
    return {state_of_the_art(), high_performance(), swap_efficient(), low_cost()};
}

HardwareProfile HardwareProfile::by_name(const std::string& name) {
    for (const auto& p : builtins())
        if (p.name == name) return p;
    throw Error("unknown hardware profile: " + name);
}

double SignalSpec::beta() const {
    return rms_bandwidth_beta > 0.0 ? rms_bandwidth_beta : bandwidth / std::sqrt(12.0);
}

double SignalSpec::kappa_wf() const {
    double b = beta();
    return 1.0 / (8.0 * kPi * kPi * b * b);
}

double PointingLoss::factor() const {
    if (!enabled || theta_3db <= 0.0) return 1.0;
    return std::exp(-sigma_theta * sigma_theta / (theta_3db * theta_3db));
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::Noise: return "noise";
        case Regime::Hardware: return "hardware";
        case Regime::Interference: return "interference";
    }
    return "?";
}

double free_space_path_loss(double distance, double wavelength) {
    double x = 4.0 * kPi * distance / wavelength;
    return x * x;
}

double snr0_link_budget(const SignalSpec& sig, const HardwareProfile& hw, double distance,
                        const PointingLoss& pointing) {
    if (!(distance > 0.0)) throw Error("snr0_link_budget: distance must be positive");
    double g = db_to_lin(sig.tx_gain + sig.rx_gain);
    double prx = sig.tx_power * g / free_space_path_loss(distance, sig.wavelength());
    double noise = kBoltzmann * kRefTemperature * sig.bandwidth * db_to_lin(hw.noise_figure);
    return prx * pointing.factor() / noise;
}

double sinr_eff(double snr0, const HardwareProfile& hw, double interference_sum) {
    if (std::isinf(snr0)) {
        if (hw.gamma_eff > 0.0) return std::exp(-hw.sigma_phi_sq) / hw.gamma_eff;
        return snr0;
    }
    return snr0 * std::exp(-hw.sigma_phi_sq) / (1.0 + snr0 * hw.gamma_eff + interference_sum);
}

double ranging_variance(const SignalSpec& sig, double sigma_phi_sq, double sinr) {
    if (!(sinr > 0.0)) throw Error("no signal");
    double c2 = kSpeedOfLight * kSpeedOfLight;
    double w = 2.0 * kPi * sig.f_c;
    return c2 * (sig.kappa_wf() / sinr + sigma_phi_sq / (w * w));
}

double meas_variance(const SignalSpec& sig, const HardwareProfile& hw, const LinkCondition& cond) {
    return ranging_variance(sig, hw.sigma_phi_sq, sinr_eff(cond.snr0, hw, cond.interference_sum));
}

double phase_noise_floor(const SignalSpec& sig, double sigma_phi_sq) {
    return kSpeedOfLight * std::sqrt(sigma_phi_sq) / (2.0 * kPi * sig.f_c);
}

RangingLimits ranging_limits(const SignalSpec& sig, const HardwareProfile& hw) {
    RangingLimits r;
    double c2 = kSpeedOfLight * kSpeedOfLight;
    r.ceiling = std::sqrt(c2 * sig.kappa_wf() * hw.gamma_eff * std::exp(hw.sigma_phi_sq));
    r.floor = phase_noise_floor(sig, hw.sigma_phi_sq);
    r.sigma_min = std::max(r.ceiling, r.floor);
    r.hardware_bounded = hw.gamma_eff > 0.0;
    r.snr_crit = r.hardware_bounded ? 1.0 / hw.gamma_eff : std::numeric_limits<double>::infinity();
    return r;
}

Regime regime_classify(double snr0, const HardwareProfile& hw, double interference_sum) {
    double hwt = snr0 * hw.gamma_eff;
    if (1.0 >= hwt && 1.0 >= interference_sum) return Regime::Noise;
    if (hwt >= interference_sum) return Regime::Hardware;
    return Regime::Interference;
}

}  // namespace ncrlb
