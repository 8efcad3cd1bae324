#include "ncrlb/interference.hpp"

#include <algorithm>
#include <cmath>

#include "ncrlb/parallel.hpp"

namespace ncrlb {

namespace {
constexpr std::size_t kBlock = 1 << 15;

double jitter_prefactor(double theta_b, double sigma_e) {
    return 1.0 / (1.0 + 4.0 * sigma_e * sigma_e / (theta_b * theta_b));
}

double jitter_exponent(double theta_b, double sigma_e, double theta) {
    return -theta * theta / (0.5 * theta_b * theta_b + 2.0 * sigma_e * sigma_e);
}
}  // namespace

double BeamModel::boresight_gain() const {
    double t = divergence();
    return 8.0 / (t * t);
}

BeamModel BeamModel::from_divergence(double wavelength, double theta) {
    return {wavelength, wavelength / (kPi * theta)};
}

BeamModel BeamModel::from_hpbw(double wavelength, double hpbw) {
    return from_divergence(wavelength, hpbw / std::sqrt(2.0 * std::log(2.0)));
}

double beam_radius(const BeamModel& b, double z) {
    double t = b.wavelength * z / (kPi * b.waist_w0 * b.waist_w0);
    return b.waist_w0 * std::sqrt(1.0 + t * t);
}

RayleighMoments rayleigh_pointing_moments(const PointingJitter& j) {
    return {j.sigma_e * std::sqrt(kPi / 2.0), 2.0 * j.sigma_e * j.sigma_e};
}

double avg_interference_power(double tx_power, const BeamModel& tx_beam, double rx_gain,
                              const InterferencePair& pair, const PointingJitter& jitter) {
    double th = tx_beam.divergence();
    double fs = tx_beam.wavelength / (4.0 * kPi * pair.cross_distance);
    return tx_power * tx_beam.boresight_gain() * rx_gain * fs * fs *
           jitter_prefactor(th, jitter.sigma_e) *
           std::exp(jitter_exponent(th, jitter.sigma_e, pair.theta_lm));
}

McEstimate mc_interference_oracle(double tx_power, const BeamModel& tx_beam, double rx_gain,
                                  const InterferencePair& pair, const PointingJitter& jitter,
                                  std::size_t samples, std::uint64_t seed) {
    const double d = pair.cross_distance;
    const double w = beam_radius(tx_beam, d);
    const double a_eff = rx_gain * tx_beam.wavelength * tx_beam.wavelength / (4.0 * kPi);
    const double peak = a_eff * 2.0 * tx_power / (kPi * w * w);
    const double k = 2.0 * d * d / (w * w);
    const double th = pair.theta_lm;
    const double se = jitter.sigma_e;

    const std::size_t nblocks = (samples + kBlock - 1) / kBlock;
    std::vector<double> sum(nblocks, 0.0), sum2(nblocks, 0.0);
    parallel_for(nblocks, [&](std::size_t b) {
        auto rng = substream(seed, b);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        std::size_t n = std::min(kBlock, samples - b * kBlock);
        double s = 0.0, s2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            // Rayleigh magnitude, uniform phase
            double te = se * std::sqrt(-2.0 * std::log(1.0 - uni(rng)));
            double phi = 2.0 * kPi * uni(rng);
            double dev2 = th * th + te * te - 2.0 * th * te * std::cos(phi);
            double p = peak * std::exp(-k * dev2);
            s += p;
            s2 += p * p;
        }
        sum[b] = s;
        sum2[b] = s2;
    });
    double s = 0.0, s2 = 0.0;
    for (std::size_t b = 0; b < nblocks; ++b) {
        s += sum[b];
        s2 += sum2[b];
    }
    double n = static_cast<double>(samples);
    double mean = s / n;
    double var = std::max(0.0, s2 / n - mean * mean);
    return {mean, std::sqrt(var / n), samples};
}

double interference_coefficient(const InterferencePair& pair, const BeamModel& tx_beam,
                                const PointingJitter& jitter) {
    double r = pair.victim_distance / pair.cross_distance;
    return r * r * std::exp(jitter_exponent(tx_beam.divergence(), jitter.sigma_e, pair.theta_lm));
}

AggregateInterference aggregate_interference(const ConstellationGraph& g, const Link& victim,
                                             const BeamModel& beam, const PointingJitter& jitter,
                                             double snr0, const std::vector<Link>* transmitters) {
    const auto& links = transmitters ? *transmitters : g.links;
    const Vec3& prx = g.satellites.at(victim.rx).position;
    const double dl = (prx - g.satellites.at(victim.tx).position).norm();
    AggregateInterference out;
    for (const auto& l : links) {
        if (l.tx == victim.tx || l.tx == victim.rx) continue;
        const Vec3& pm = g.satellites.at(l.tx).position;
        Vec3 boresight = g.satellites.at(l.rx).position - pm;
        Vec3 to_victim = prx - pm;
        double dlm = to_victim.norm();
        if (dlm <= 0.0 || boresight.norm() <= 0.0) continue;
        double ang = std::atan2(boresight.cross(to_victim).norm(), boresight.dot(to_victim));
        InterferencePair pair{dl, dlm, ang};
        out.alpha_sum += interference_coefficient(pair, beam, jitter);
        ++out.interferers;
    }
    out.alpha_tilde_sum = snr0 * out.alpha_sum;
    return out;
}

}  // namespace ncrlb
