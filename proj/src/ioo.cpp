#include "ncrlb/ioo.hpp"

#include <cmath>
#include <limits>

#include "ncrlb/fusion.hpp"

namespace ncrlb {

namespace {

void check_geometry(const BistaticGeometry& g) {
    if ((g.target_pos - g.tx_pos).norm() <= 1.0 || (g.target_pos - g.rx_pos).norm() <= 1.0)
        throw Error("bistatic geometry: target coincident with a node");
}

double range_product_sq(const BistaticGeometry& g) {
    double a = (g.target_pos - g.tx_pos).squaredNorm();
    double b = (g.target_pos - g.rx_pos).squaredNorm();
    return a * b;
}

}  // namespace

double bistatic_range(const BistaticGeometry& g) {
    return (g.tx_pos - g.target_pos).norm() + (g.target_pos - g.rx_pos).norm();
}

Vec3 bistatic_gradient(const BistaticGeometry& g) {
    check_geometry(g);
    return (g.target_pos - g.tx_pos).normalized() + (g.target_pos - g.rx_pos).normalized();
}

double bistatic_angle(const BistaticGeometry& g) {
    check_geometry(g);
    Vec3 a = g.tx_pos - g.target_pos;
    Vec3 b = g.rx_pos - g.target_pos;
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

double bistatic_sinr(const BistaticGeometry& g, const EchoBudget& e) {
    check_geometry(g);
    double num = e.tx_power * e.tx_gain * e.rx_gain * e.rcs_sigma_b * e.wavelength * e.wavelength;
    double fp3 = std::pow(4.0 * kPi, 3);
    double den = fp3 * range_product_sq(g) * e.processing_loss * e.effective_noise;
    return num / den * db_to_lin(e.processing_gain);
}

double bistatic_range_variance(const BistaticGeometry& g, const SignalSpec& sig,
                               const HardwareProfile& hw, const EchoBudget& e) {
    return ranging_variance(sig, hw.sigma_phi_sq, bistatic_sinr(g, e));
}

Mat3 ioo_fim(const BistaticGeometry& g, const SignalSpec& sig, const HardwareProfile& hw,
             const EchoBudget& e) {
    Vec3 grad = bistatic_gradient(g);
    return grad * grad.transpose() / bistatic_range_variance(g, sig, hw, e);
}

IooFusion fuse_rank1(const Mat3& prior, const Vec3& grad, double sigma_sq) {
    IooFusion out;
    out.posterior = prior + grad * grad.transpose() / sigma_sq;
    Eigen::LLT<Mat3> llt(prior);
    double q;
    if (llt.info() == Eigen::Success && numeric_rank(prior, 1e-12) == 3) {
        q = grad.dot(llt.solve(grad));
    } else {
        out.singular_prior = true;
        q = grad.dot(pseudo_inverse_sym(prior, 1e-12) * grad);
    }
    double lemma = 1.0 + q / sigma_sq;
    out.volume_ratio = 1.0 / std::sqrt(lemma);
    out.info_gain_db = lin_to_db(lemma);

    out.trace_gain_db = lin_to_db(out.posterior.trace() / prior.trace());
    Eigen::SelfAdjointEigenSolver<Mat3> ep(prior, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Mat3> eq(out.posterior, Eigen::EigenvaluesOnly);
    double pmin = ep.eigenvalues()(0);
    out.weak_axis_gain_db = pmin > 0.0 ? lin_to_db(eq.eigenvalues()(0) / pmin)
                                       : std::numeric_limits<double>::infinity();
    return out;
}

IooFusion fuse_ioo(const Mat3& prior, const BistaticGeometry& g, const SignalSpec& sig,
                   const HardwareProfile& hw, const EchoBudget& e) {
    return fuse_rank1(prior, bistatic_gradient(g), bistatic_range_variance(g, sig, hw, e));
}

Vec3 ellipsoid_axes(const Mat3& fim) {
    Eigen::SelfAdjointEigenSolver<Mat3> es(fim, Eigen::EigenvaluesOnly);
    Vec3 ev = es.eigenvalues();  // ascending
    Vec3 ax;
    for (int i = 0; i < 3; ++i)
        ax(i) = ev(i) > 0.0 ? 1.0 / std::sqrt(ev(i)) : std::numeric_limits<double>::infinity();
    return ax;
}

double pg_threshold(const IooScenario& s, double target_gain_db) {
    const Vec3 grad = bistatic_gradient(s.geometry);
    double q = db_to_lin(target_gain_db) - 1.0;
    if (!(q > 0.0)) return -std::numeric_limits<double>::infinity();

    Eigen::LLT<Mat3> llt(s.prior);
    double w = grad.dot(llt.solve(grad));
    double sigma_target = w / q;
    double c2 = kSpeedOfLight * kSpeedOfLight;
    double om = 2.0 * kPi * s.signal.f_c;
    double floor = c2 * s.hardware.sigma_phi_sq / (om * om);
    if (sigma_target <= floor) return std::numeric_limits<double>::infinity();
    double sinr_needed = c2 * s.signal.kappa_wf() / (sigma_target - floor);

    EchoBudget raw = s.echo;
    raw.processing_gain = 0.0;
    return lin_to_db(sinr_needed / bistatic_sinr(s.geometry, raw));
}

bool ioo_crossover(const Mat3& j_ioo, const Mat3& j_prior, double alpha_lm, double sinr_comm) {
    Eigen::SelfAdjointEigenSolver<Mat3> es(j_prior, Eigen::EigenvaluesOnly);
    return j_ioo.trace() / es.eigenvalues()(0) > alpha_lm / sinr_comm;
}

}  // namespace ncrlb
