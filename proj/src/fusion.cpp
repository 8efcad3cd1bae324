#include "ncrlb/fusion.hpp"

#include <cmath>
#include <limits>

namespace ncrlb {

namespace {

MatX symmetrize(const MatX& M) { return 0.5 * (M + M.transpose()); }

// solve J x = y; least-squares when J is singular
VecX prior_mean(const MatX& J, const VecX& y) {
    if (J.size() == 0) return VecX();
    Eigen::LLT<MatX> llt(J);
    if (llt.info() == Eigen::Success) return llt.solve(y);
    return Eigen::CompleteOrthogonalDecomposition<MatX>(J).solve(y);
}

}  // namespace

std::vector<SlotKind> satellite_partition(int n_sat) {
    std::vector<SlotKind> p;
    for (int i = 0; i < n_sat; ++i) {
        for (int k = 0; k < 6; ++k) p.push_back(SlotKind::Kinematic);
        p.push_back(SlotKind::Clock);
        p.push_back(SlotKind::Clock);
    }
    return p;
}

InformationState InformationState::zero(int n_sat, double epoch) {
    InformationState s;
    s.J = MatX::Zero(8 * n_sat, 8 * n_sat);
    s.y = VecX::Zero(8 * n_sat);
    s.epoch = epoch;
    s.partition = satellite_partition(n_sat);
    return s;
}

InformationState InformationState::from(const MatX& J, const VecX& y, std::vector<SlotKind> partition) {
    InformationState s;
    s.J = J;
    s.y = y;
    if (partition.empty()) partition.assign(static_cast<std::size_t>(J.rows()), SlotKind::Kinematic);
    s.partition = std::move(partition);
    return s;
}

InformationState if_predict(const InformationState& s, const MatX& F, const MatX& Q,
                            const PredictOptions& opt) {
    const Eigen::Index n = s.J.rows();
    if (F.rows() != n || F.cols() != n || Q.rows() != n || Q.cols() != n)
        throw Error("if_predict: dimension mismatch");

    MatX Qr = Q;
    Eigen::LDLT<MatX> qf(Qr);
    auto bad = [&](const Eigen::LDLT<MatX>& f) {
        if (f.info() != Eigen::Success || !f.isPositive()) return true;
        double dmax = f.vectorD().cwiseAbs().maxCoeff();
        return !(f.vectorD().minCoeff() > 1e-14 * dmax) || dmax == 0.0;
    };
    if (bad(qf)) {
        if (!opt.regularize) throw Error("if_predict: singular process noise");
        double eps = opt.epsilon * std::max(Q.trace() / static_cast<double>(n), 1e-300);
        Qr += eps * MatX::Identity(n, n);
        qf.compute(Qr);
        if (bad(qf)) throw Error("if_predict: process noise not positive definite");
    }
    MatX Qi = qf.solve(MatX::Identity(n, n));
    MatX QiF = Qi * F;
    MatX S = symmetrize(s.J + F.transpose() * QiF);
    Eigen::LDLT<MatX> sf(S);
    MatX Jp = symmetrize(Qi - QiF * sf.solve(QiF.transpose()));

    InformationState out = s;
    out.J = Jp;
    out.y = Jp * (F * prior_mean(s.J, s.y));
    return out;
}

InformationState if_update_independent(const InformationState& s,
                                       const std::vector<LinkMeasurement>& links) {
    InformationState out = s;
    for (const auto& m : links) {
        if (!(m.variance > 0.0)) throw Error("if_update_independent: variance must be positive");
        out.J.noalias() += m.h * m.h.transpose() / m.variance;
        out.y += m.h * (m.z / m.variance);
    }
    return out;
}

MatX NoiseCovariance::dense() const {
    MatX C = local_diag.asDiagonal();
    for (const auto& t : shared) C += t.variance * t.association * t.association.transpose();
    return C;
}

MatX woodbury_inverse(const NoiseCovariance& c) {
    if ((c.local_diag.array() <= 0.0).any()) throw Error("woodbury_inverse: local variances must be positive");
    MatX Ci = c.local_diag.cwiseInverse().asDiagonal();
    for (const auto& t : c.shared) {
        if (t.variance <= 0.0) continue;
        if (t.association.rows() != c.size()) throw Error("woodbury_inverse: association rows != L");
        const MatX& A = t.association;
        MatX CiA = Ci * A;
        MatX core = A.transpose() * CiA;
        core.diagonal().array() += 1.0 / t.variance;
        Ci -= CiA * Eigen::LDLT<MatX>(core).solve(CiA.transpose());
        Ci = symmetrize(Ci);
    }
    return Ci;
}

InformationState if_update_correlated(const InformationState& s, const MatX& H,
                                      const NoiseCovariance& c, const VecX& z) {
    MatX Ci = woodbury_inverse(c);
    InformationState out = s;
    MatX HtCi = H.transpose() * Ci;
    out.J = symmetrize(out.J + HtCi * H);
    out.y += HtCi * z;
    return out;
}

MatX saturated_link_fim(const VecX& h, const SignalSpec& sig, const HardwareProfile& hw) {
    if (hw.gamma_eff <= 0.0 && hw.sigma_phi_sq <= 0.0) throw Error("unbounded information");
    double c2 = kSpeedOfLight * kSpeedOfLight;
    double w = 2.0 * kPi * sig.f_c;
    double denom = c2 * (sig.kappa_wf() * hw.gamma_eff * std::exp(hw.sigma_phi_sq) +
                         hw.sigma_phi_sq / (w * w));
    return h * h.transpose() / denom;
}

MatX pseudo_inverse_sym(const MatX& M, double rel_tol) {
    if (M.size() == 0) return M;
    Eigen::SelfAdjointEigenSolver<MatX> es(symmetrize(M));
    const VecX& ev = es.eigenvalues();
    double tol = rel_tol * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    VecX inv = VecX::Zero(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (std::abs(ev(i)) > tol) inv(i) = 1.0 / ev(i);
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

int numeric_rank(const MatX& M, double rel_tol) {
    if (M.size() == 0) return 0;
    Eigen::SelfAdjointEigenSolver<MatX> es(symmetrize(M), Eigen::EigenvaluesOnly);
    const VecX& ev = es.eigenvalues();
    double tol = rel_tol * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    return static_cast<int>((ev.array().abs() > tol).count());
}

MatX efim_marginalize(const InformationState& s, ClockTreatment clocks) {
    std::vector<Eigen::Index> a, b;
    for (std::size_t i = 0; i < s.partition.size(); ++i)
        (s.partition[i] == SlotKind::Kinematic ? a : b).push_back(static_cast<Eigen::Index>(i));
    if (a.empty()) throw Error("efim_marginalize: no kinematic states");
    MatX Jaa = s.J(a, a);
    if (b.empty() || clocks == ClockTreatment::Known) return Jaa;
    MatX Jab = s.J(a, b);
    MatX Jbb = s.J(b, b);
    return symmetrize(Jaa - Jab * pseudo_inverse_sym(Jbb) * Jab.transpose());
}

MatX clock_fim_structure(const ConstellationGraph& g, double per_link_clock_info) {
    const int n = g.size();
    MatX L = MatX::Zero(n, n);
    for (const auto& l : g.links) {
        L(l.tx, l.tx) += 1.0;
        L(l.rx, l.rx) += 1.0;
        L(l.tx, l.rx) -= 1.0;
        L(l.rx, l.tx) -= 1.0;
    }
    return per_link_clock_info * L;
}

DopReport dop_metrics(const MatX& efim, const ConstellationGraph& g) {
    const int n = g.size();
    int stride = 0;
    if (efim.rows() == 3 * n) stride = 3;
    else if (efim.rows() == 6 * n) stride = 6;
    else throw Error("dop_metrics: EFIM dimension must be 3N or 6N");

    // subspace reachable by the constellation's position vectors
    Eigen::Matrix<double, 3, Eigen::Dynamic> P(3, n);
    for (int i = 0; i < n; ++i) P.col(i) = g.satellites[i].position;
    Eigen::JacobiSVD<MatX> svd(P, Eigen::ComputeFullU);
    int k = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1e-9 * svd.singularValues()(0)) ++k;
    MatX V = svd.matrixU().leftCols(k);

    double scale = std::max(efim.diagonal().cwiseAbs().maxCoeff(), 1e-300);
    DopReport rep;
    rep.min_efim_eigenvalue = std::numeric_limits<double>::infinity();
    double g2 = 0.0, h2 = 0.0, v2 = 0.0;
    for (int i = 0; i < n; ++i) {
        MatX E = efim.block(stride * i, stride * i, 3, 3);
        MatX M = V.transpose() * E * V;
        Eigen::SelfAdjointEigenSolver<MatX> es(symmetrize(M));
        double lmin = es.eigenvalues()(0);
        rep.min_efim_eigenvalue = std::min(rep.min_efim_eigenvalue, lmin);
        if (lmin <= 1e-9 * scale) {
            if (!rep.singular) {
                rep.singular = true;
                rep.deficient_satellite = i;
                rep.deficient_direction = V * es.eigenvectors().col(0);
            }
            rep.satellite_gdop.push_back(std::numeric_limits<double>::infinity());
            continue;
        }
        MatX cov = V * es.eigenvectors() * es.eigenvalues().cwiseInverse().asDiagonal() *
                   es.eigenvectors().transpose() * V.transpose();
        const auto& sat = g.satellites[i];
        Vec3 r = sat.position.normalized();
        double vv = r.dot(cov * r);
        double tr = cov.trace();
        g2 += tr;
        v2 += vv;
        h2 += tr - vv;
        rep.position_crlb_trace += tr;
        rep.satellite_gdop.push_back(std::sqrt(tr));
    }
    if (rep.singular) {
        double inf = std::numeric_limits<double>::infinity();
        rep.gdop = rep.hdop = rep.vdop = inf;
        rep.vdop_hdop_ratio = std::numeric_limits<double>::quiet_NaN();
        rep.position_crlb_trace = inf;
        rep.min_efim_eigenvalue = std::max(rep.min_efim_eigenvalue, 0.0);
        return rep;
    }
    rep.gdop = std::sqrt(g2 / n);
    rep.hdop = std::sqrt(h2 / n);
    rep.vdop = std::sqrt(v2 / n);
    rep.vdop_hdop_ratio = rep.vdop / rep.hdop;
    return rep;
}

SandwichResult mismodel_sandwich(const MatX& H, const NoiseCovariance& c_true, const VecX& w_assumed) {
    if (w_assumed.size() != H.rows()) throw Error("mismodel_sandwich: weight size mismatch");
    MatX C = c_true.dense();
    MatX Ci = woodbury_inverse(c_true);
    MatX HtW = H.transpose() * w_assumed.asDiagonal();
    Eigen::LDLT<MatX> mf(symmetrize(HtW * H));
    if (mf.info() != Eigen::Success || numeric_rank(HtW * H, 1e-12) < H.cols())
        throw Error("mismodel_sandwich: H^T W H is singular");
    MatX Minv = mf.solve(MatX::Identity(H.cols(), H.cols()));
    SandwichResult r;
    r.cov_true = symmetrize(Minv * HtW * C * HtW.transpose() * Minv);
    MatX G = symmetrize(H.transpose() * Ci * H);
    r.gls = symmetrize(Eigen::LDLT<MatX>(G).solve(MatX::Identity(H.cols(), H.cols())));
    r.penalty = r.cov_true.trace() / r.gls.trace();
    r.rmse_penalty = std::sqrt(r.penalty);
    return r;
}

MatX reduce_to_row_space(const MatX& H, double rel_tol) {
    Eigen::JacobiSVD<MatX> svd(H, Eigen::ComputeFullV);
    const VecX& s = svd.singularValues();
    int k = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0)) ++k;
    return H * svd.matrixV().leftCols(k);
}

}  // namespace ncrlb
