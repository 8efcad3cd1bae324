#pragma once

#include <cstdint>
#include <vector>

#include "ncrlb/network.hpp"

namespace ncrlb {

struct BeamModel {
    double wavelength = 1e-3;  // m
    double waist_w0 = 1.0;     // m

    // far-field 1/e^2 half-angle lambda/(pi w0)
    double divergence() const { return wavelength / (kPi * waist_w0); }
    // half-power beamwidth (Eq. 37)
    double hpbw_theta_B() const { return divergence() * std::sqrt(2.0 * std::log(2.0)); }
    double rayleigh_range() const { return kPi * waist_w0 * waist_w0 / wavelength; }
    // boresight gain of the gaussian mode, 8/divergence^2
    double boresight_gain() const;

    static BeamModel from_divergence(double wavelength, double theta);
    static BeamModel from_hpbw(double wavelength, double hpbw);
};

struct PointingJitter {
    double sigma_e = 0.0;  // rad, per axis
};

struct InterferencePair {
    double victim_distance = 0.0;  // d_l
    double cross_distance = 0.0;   // d_lm
    double theta_lm = 0.0;         // rad
};

struct RayleighMoments {
    double mean = 0.0;
    double second_moment = 0.0;
};

double beam_radius(const BeamModel& b, double z);

RayleighMoments rayleigh_pointing_moments(const PointingJitter& j);

// jitter-averaged interference power (closed form); rx_gain linear
double avg_interference_power(double tx_power, const BeamModel& tx_beam, double rx_gain,
                              const InterferencePair& pair, const PointingJitter& jitter);

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

// point-receiver instantaneous power averaged over Rayleigh pointing error
McEstimate mc_interference_oracle(double tx_power, const BeamModel& tx_beam, double rx_gain,
                                  const InterferencePair& pair, const PointingJitter& jitter,
                                  std::size_t samples, std::uint64_t seed);

double interference_coefficient(const InterferencePair& pair, const BeamModel& tx_beam,
                                const PointingJitter& jitter);

struct AggregateInterference {
    double alpha_sum = 0.0;
    double alpha_tilde_sum = 0.0;
    int interferers = 0;
};

// transmitters: links whose tx node is a concurrent transmitter (defaults to g.links)
AggregateInterference aggregate_interference(const ConstellationGraph& g, const Link& victim,
                                             const BeamModel& beam, const PointingJitter& jitter,
                                             double snr0,
                                             const std::vector<Link>* transmitters = nullptr);

}  // namespace ncrlb
