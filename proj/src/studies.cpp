#include <algorithm>
#include <cmath>
#include <limits>

#include "ncrlb/experiments.hpp"
#include "ncrlb/parallel.hpp"

namespace ncrlb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> v;
    auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) v.push_back(lo + static_cast<double>(i) * step);
    return v;
}

ResultTable make_table(const ScenarioConfig& cfg, std::string id, std::vector<Column> cols) {
    ResultTable t;
    t.id = std::move(id);
    t.columns = std::move(cols);
    t.config_hash = config_hash(cfg);
    t.seed = cfg.seed;
    return t;
}

Cell num(double v) { return v; }
Cell integer(long long v) { return static_cast<std::int64_t>(v); }

}  // namespace

// ---------------------------------------------------------------- helpers

double knee_snr_db(const std::vector<double>& snr_db, const std::vector<double>& rmse) {
    const std::size_t n = snr_db.size();
    if (n < 5 || rmse.size() != n) throw Error("knee_snr_db: need at least 5 points");
    std::vector<double> f(n), k(n, -kInf);
    for (std::size_t i = 0; i < n; ++i) f[i] = std::log10(rmse[i]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double h = 0.5 * (snr_db[i + 1] - snr_db[i - 1]);
        double d1 = (f[i + 1] - f[i - 1]) / (2.0 * h);
        double d2 = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h);
        k[i] = d2 / std::pow(1.0 + d1 * d1, 1.5);
    }
    std::size_t best = static_cast<std::size_t>(std::max_element(k.begin(), k.end()) - k.begin());
    if (best <= 1 || best + 2 >= n) return snr_db[best];
    double a = k[best - 1], b = k[best], c = k[best + 1];
    double den = a - 2.0 * b + c;
    double off = den != 0.0 ? 0.5 * (a - c) / den : 0.0;
    return snr_db[best] + off * (snr_db[best + 1] - snr_db[best]);
}

std::optional<double> contour_snr_db(const SignalSpec& sig, double sigma_phi_sq, double gamma,
                                     double alpha, double target_rmse) {
    // rmse^2 = c^2 [kappa e^{phi} (1/snr + Gamma + alpha) + phi/(2 pi f_c)^2]
    double c2 = kSpeedOfLight * kSpeedOfLight;
    double om = 2.0 * kPi * sig.f_c;
    double k = sig.kappa_wf() * std::exp(sigma_phi_sq);
    double inv_snr = (target_rmse * target_rmse / c2 - sigma_phi_sq / (om * om)) / k - gamma - alpha;
    if (!(inv_snr > 0.0)) return std::nullopt;
    return -lin_to_db(inv_snr);
}

double contour_exchange_rate(const SignalSpec& sig, double sigma_phi_sq, double alpha,
                             double target_rmse, double dlog) {
    // bisection for the gamma where the contour meets SNR0 = 1/Gamma
    auto gap = [&](double lg) {
        auto s = contour_snr_db(sig, sigma_phi_sq, std::pow(10.0, lg), alpha, target_rmse);
        if (!s) return kInf;
        return *s + 10.0 * lg;  // snr_db - (-10 log10 gamma)
    };
    double lo = -12.0, hi = 0.0;
    while (std::isinf(gap(hi)) && hi > lo) hi -= 0.01;
    if (!(gap(lo) < 0.0) || !(gap(hi) > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (gap(mid) < 0.0 ? lo : hi) = mid;
    }
    double lg = 0.5 * (lo + hi);
    auto a = contour_snr_db(sig, sigma_phi_sq, std::pow(10.0, lg - dlog), alpha, target_rmse);
    auto b = contour_snr_db(sig, sigma_phi_sq, std::pow(10.0, lg + dlog), alpha, target_rmse);
    if (!a || !b) return std::numeric_limits<double>::quiet_NaN();
    return std::abs((*b - *a) / (2.0 * dlog));
}

MatX range_basis(const MatX& M, double rel_tol) {
    Eigen::SelfAdjointEigenSolver<MatX> es(0.5 * (M + M.transpose()));
    const VecX& ev = es.eigenvalues();
    double tol = rel_tol * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > tol) keep.push_back(i);
    MatX B(M.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) B.col(static_cast<Eigen::Index>(i)) = es.eigenvectors().col(keep[i]);
    return B;
}

double information_per_dof_db(const MatX& J, const MatX& basis) {
    if (basis.cols() == 0) throw Error("information_per_dof_db: empty subspace");
    MatX P = basis.transpose() * J * basis;
    return lin_to_db(P.trace() / static_cast<double>(basis.cols()));
}

std::vector<CorrelationPoint> correlation_sweep(const ConstellationGraph& g,
                                                const std::vector<double>& rhos, double sigma_sq) {
    const int n = g.size();
    const auto& links = g.links;
    if (links.empty()) throw Error("correlation_sweep: no links");
    const auto L = static_cast<Eigen::Index>(links.size());
    MatX H8 = measurement_matrix(g, links);
    MatX Hr = reduce_to_row_space(position_jacobian(g, links));
    MatX A = clock_association(n, links);
    std::vector<Eigen::Index> clock_slots;
    for (int i = 0; i < n; ++i) clock_slots.push_back(state_index(i, 6));

    auto covariance = [&](double rho) {
        NoiseCovariance c;
        c.local_diag = VecX::Constant(L, (1.0 - rho) * sigma_sq);
        c.shared.push_back({rho * sigma_sq, A});
        return c;
    };
    auto clock_info = [&](const NoiseCovariance& c) {
        InformationState s = if_update_correlated(InformationState::zero(n), H8, c, VecX::Zero(L));
        return MatX(s.J(clock_slots, clock_slots));
    };

    NoiseCovariance c0 = covariance(0.0);
    MatX Jbb0 = clock_info(c0);
    MatX basis = range_basis(Jbb0);
    double info0 = information_per_dof_db(Jbb0, basis);
    double trace0 = mismodel_sandwich(Hr, c0, VecX::Constant(L, 1.0 / sigma_sq)).gls.trace();

    std::vector<CorrelationPoint> out;
    for (double rho : rhos) {
        NoiseCovariance c = covariance(rho);
        VecX w = c.dense().diagonal().cwiseInverse();
        SandwichResult s = mismodel_sandwich(Hr, c, w);
        CorrelationPoint p;
        p.rho = rho;
        p.info_per_dof_db = information_per_dof_db(clock_info(c), basis);
        p.info_loss_db = info0 - p.info_per_dof_db;
        p.crlb_trace = s.gls.trace();
        p.degradation = p.crlb_trace / trace0;
        p.penalty = s.penalty;
        p.rmse_penalty = s.rmse_penalty;
        out.push_back(p);
    }
    return out;
}

IooReconstruction reconstruct_ioo(const ScenarioConfig& cfg) {
    const auto& o = cfg.ioo;
    IooReconstruction r;
    IooScenario& s = r.scenario;
    s.signal = cfg.signal;
    s.hardware = cfg.hardware;

    double half = 0.5 * o.bistatic_angle_deg * kPi / 180.0;
    s.geometry.target_pos = Vec3::Zero();
    s.geometry.tx_pos = -o.target_range * Vec3(std::cos(half), std::sin(half), 0.0);
    s.geometry.rx_pos = -o.target_range * Vec3(std::cos(half), -std::sin(half), 0.0);
    s.prior = o.prior_axes.cwiseAbs2().cwiseInverse().asDiagonal();

    const Vec3 grad = bistatic_gradient(s.geometry);
    const double c2 = kSpeedOfLight * kSpeedOfLight;
    const double om = 2.0 * kPi * s.signal.f_c;
    const double floor = c2 * s.hardware.sigma_phi_sq / (om * om);

    // variance that moves the weak axis to the target
    double add = 1.0 / (o.target_major_axis * o.target_major_axis) - s.prior(0, 0);
    double var = grad.squaredNorm() / add;
    if (!(var > floor)) throw Error("ioo reconstruction: target axis below the phase-noise floor");
    r.sigma_rb = std::sqrt(var);
    r.operating_sinr = c2 * s.signal.kappa_wf() / (var - floor);

    EchoBudget& e = s.echo;
    e.tx_power = s.signal.tx_power;
    e.tx_gain = db_to_lin(s.signal.tx_gain);
    e.rx_gain = db_to_lin(s.signal.rx_gain);
    e.rcs_sigma_b = o.rcs;
    e.wavelength = s.signal.wavelength();
    e.processing_loss = db_to_lin(o.processing_loss_db);
    e.processing_gain = 0.0;
    e.effective_noise = 1.0;
    r.thermal_noise = kBoltzmann * kRefTemperature * s.signal.bandwidth * db_to_lin(s.hardware.noise_figure);

    // N_eff placing the calibration utility at the calibration PG
    double sinr_unit = bistatic_sinr(s.geometry, e);
    double pg_unit = pg_threshold(s, o.calibration_gain_db);
    r.n_eff = db_to_lin(o.calibration_pg_db - pg_unit);
    e.effective_noise = r.n_eff;
    double raw = sinr_unit / r.n_eff;
    r.raw_sinr_db = lin_to_db(raw);
    r.operating_pg_db = lin_to_db(r.operating_sinr / raw);
    e.processing_gain = r.operating_pg_db;
    return r;
}

// ---------------------------------------------------------------- studies

std::vector<ResultTable> run_hw_ceiling_study(const ScenarioConfig& cfg) {
    const auto& sc = cfg.ceiling;
    auto t = make_table(cfg, "ceiling",
                        {{"profile", ""}, {"snr_db", "dB"}, {"rmse", "m"}, {"sinr_eff_db", "dB"}, {"regime", ""}});
    auto s = make_table(cfg, "ceiling_summary",
                        {{"profile", ""}, {"gamma_eff", ""}, {"sigma_phi_sq", "rad^2"}, {"ceiling", "m"},
                         {"ceiling_without_phase_factor", "m"}, {"floor", "m"}, {"sigma_min", "m"},
                         {"snr_crit_db", "dB"}, {"knee_db", "dB"}, {"rmse_at_max_snr", "m"}});
    auto snrs = grid(sc.snr_db_min, sc.snr_db_max, sc.snr_db_step);
    for (const auto& name : sc.profiles) {
        HardwareProfile hw = HardwareProfile::by_name(name);
        std::vector<double> rmse;
        for (double db : snrs) {
            double snr = db_to_lin(db);
            double v = std::sqrt(meas_variance(cfg.signal, hw, {0.0, snr, 0.0}));
            rmse.push_back(v);
            t.rows.push_back({name, num(db), num(v), num(lin_to_db(sinr_eff(snr, hw, 0.0))),
                              to_string(regime_classify(snr, hw, 0.0))});
        }
        RangingLimits lim = ranging_limits(cfg.signal, hw);
        double c2 = kSpeedOfLight * kSpeedOfLight;
        double bare = std::sqrt(c2 * cfg.signal.kappa_wf() * hw.gamma_eff);
        s.rows.push_back({name, num(hw.gamma_eff), num(hw.sigma_phi_sq), num(lim.ceiling), num(bare),
                          num(lim.floor), num(lim.sigma_min), num(lin_to_db(lim.snr_crit)),
                          num(knee_snr_db(snrs, rmse)), num(rmse.back())});
    }
    return {t, s};
}

std::vector<ResultTable> run_pn_floor_study(const ScenarioConfig& cfg) {
    const auto& fc = cfg.floor;
    auto t = make_table(cfg, "floor",
                        {{"carrier", "Hz"}, {"sigma_phi_sq", "rad^2"}, {"snr_db", "dB"}, {"rmse", "m"}});
    auto s = make_table(cfg, "floor_summary",
                        {{"carrier", "Hz"}, {"sigma_phi_sq", "rad^2"}, {"floor", "m"}, {"rmse_asymptote", "m"},
                         {"relative_error", ""}, {"floor_dominant_snr_db", "dB"},
                         {"slope_above_dominant_plus_20db", "mm/dB"}});
    auto snrs = grid(fc.snr_db_min, fc.snr_db_max, fc.snr_db_step);
    for (double fcar : fc.carriers) {
        SignalSpec sig = cfg.signal;
        sig.f_c = fcar;
        for (double phi : fc.sigma_phi_sq) {
            HardwareProfile hw{"floor", 0.0, phi, cfg.hardware.noise_figure};
            for (double db : snrs) {
                double v = std::sqrt(meas_variance(sig, hw, {0.0, db_to_lin(db), 0.0}));
                t.rows.push_back({num(fcar), num(phi), num(db), num(v)});
            }
            double floor = phase_noise_floor(sig, phi);
            double asym = std::sqrt(meas_variance(sig, hw, {0.0, fc.asymptote_snr, 0.0}));
            // thermal term equals the floor term
            double c2 = kSpeedOfLight * kSpeedOfLight;
            double dominant = lin_to_db(c2 * sig.kappa_wf() * std::exp(phi) / (floor * floor));
            double s0 = db_to_lin(dominant + 20.0);
            double r0 = std::sqrt(meas_variance(sig, hw, {0.0, s0, 0.0}));
            double r1 = std::sqrt(meas_variance(sig, hw, {0.0, s0 * db_to_lin(1.0), 0.0}));
            s.rows.push_back({num(fcar), num(phi), num(floor), num(asym), num(asym / floor - 1.0),
                              num(dominant), num(std::abs(r1 - r0) * 1e3)});
        }
    }
    return {t, s};
}

namespace {

struct DopSample {
    DopReport rep;
    int links = 0;
};

DopSample geometry_dop(const GeometrySpec& spec, ClockModel clocks) {
    ConstellationGraph g = generate_geometry(spec);
    const int n = g.size();
    std::vector<LinkMeasurement> meas;
    for (const auto& l : g.links) meas.push_back({VecX(measurement_jacobian(g, l)), 1.0, 0.0});
    InformationState s = if_update_independent(InformationState::zero(n), meas);
    MatX efim = efim_marginalize(
        s, clocks == ClockModel::Synchronized ? ClockTreatment::Known : ClockTreatment::Marginalize);
    return {dop_metrics(efim, g), static_cast<int>(g.links.size())};
}

}  // namespace

std::vector<ResultTable> run_geometry_study(const ScenarioConfig& cfg) {
    const auto& gc = cfg.geometry_study;
    auto t = make_table(cfg, "geometry",
                        {{"kind", ""}, {"n_sat", ""}, {"links", ""}, {"gdop", ""}, {"hdop", ""}, {"vdop", ""},
                         {"vdop_hdop_ratio", ""}, {"min_efim_eigenvalue", "1/m^2"}, {"position_crlb_trace", "m^2"},
                         {"singular", ""}, {"singular_fraction", ""}, {"realizations", ""}});
    auto sm = make_table(cfg, "geometry_summary",
                         {{"kind", ""}, {"gdop_n6", ""}, {"gdop_n8", ""}, {"improvement_6_to_8_pct", "%"}});

    for (const auto& kind_name : gc.kinds) {
        GeometryKind kind = parse_geometry_kind(kind_name);
        std::vector<double> gd(9, kInf);
        for (int n : gc.counts) {
            GeometrySpec spec = cfg.geometry;
            spec.kind = kind;
            spec.count = n;
            if (kind != GeometryKind::Random) {
                DopSample d = geometry_dop(spec, gc.clock_model);
                const auto& r = d.rep;
                gd[n] = r.gdop;
                t.rows.push_back({kind_name, integer(n), integer(d.links), num(r.gdop), num(r.hdop), num(r.vdop),
                                  num(r.vdop_hdop_ratio), num(r.min_efim_eigenvalue), num(r.position_crlb_trace),
                                  integer(r.singular), num(r.singular ? 1.0 : 0.0), integer(1)});
                continue;
            }
            const auto R = static_cast<std::size_t>(cfg.realizations);
            std::vector<DopSample> runs(R);
            parallel_for(R, [&](std::size_t i) {
                GeometrySpec sp = spec;
                sp.seed = substream(cfg.seed, static_cast<std::uint64_t>(n) * 1000003ull + i)();
                runs[i] = geometry_dop(sp, gc.clock_model);
            });
            double sg = 0, sh = 0, sv = 0, sr = 0, st = 0, sl = 0, links = 0;
            double emin = kInf;
            std::size_t ok = 0;
            for (const auto& d : runs) {
                links += d.links;
                if (d.rep.singular) continue;
                ++ok;
                sg += d.rep.gdop;
                sh += d.rep.hdop;
                sv += d.rep.vdop;
                sr += d.rep.vdop_hdop_ratio;
                st += d.rep.position_crlb_trace;
                sl += d.rep.min_efim_eigenvalue;
                emin = std::min(emin, d.rep.min_efim_eigenvalue);
            }
            double frac = 1.0 - static_cast<double>(ok) / static_cast<double>(R);
            double m = ok ? 1.0 / static_cast<double>(ok) : 0.0;
            bool singular = ok == 0;
            double nan = std::numeric_limits<double>::quiet_NaN();
            gd[n] = singular ? kInf : sg * m;
            t.rows.push_back({kind_name, integer(n), num(links / static_cast<double>(R)),
                              num(singular ? kInf : sg * m), num(singular ? kInf : sh * m),
                              num(singular ? kInf : sv * m), num(singular ? nan : sr * m),
                              num(singular ? 0.0 : sl * m), num(singular ? kInf : st * m), integer(singular),
                              num(frac), integer(static_cast<long long>(R))});
        }
        if (std::count(gc.counts.begin(), gc.counts.end(), 6) && std::count(gc.counts.begin(), gc.counts.end(), 8)) {
            double imp = (gd[6] - gd[8]) / gd[6] * 100.0;
            sm.rows.push_back({kind_name, num(gd[6]), num(gd[8]), std::isfinite(imp) ? num(imp) : Cell{"singular"}});
        }
    }
    return {t, sm};
}

std::vector<ResultTable> run_regime_map(const ScenarioConfig& cfg) {
    const auto& rc = cfg.regime;
    auto t = make_table(cfg, "regime",
                        {{"alpha", ""}, {"snr_db", "dB"}, {"log10_gamma", ""}, {"rmse", "m"}, {"regime", ""}});
    auto ct = make_table(cfg, "regime_contour", {{"alpha", ""}, {"log10_gamma", ""}, {"snr_db", "dB"}});
    auto sm = make_table(cfg, "regime_summary",
                         {{"alpha", ""}, {"contour_rmse", "m"}, {"exchange_rate", "dB/decade"},
                          {"interference_fraction", ""}, {"hardware_fraction", ""}, {"noise_fraction", ""}});
    auto snrs = grid(rc.snr_db_min, rc.snr_db_max, rc.snr_db_step);
    auto lgs = grid(rc.log10_gamma_min, rc.log10_gamma_max, rc.log10_gamma_step);
    const double phi = cfg.hardware.sigma_phi_sq;
    for (double a : rc.alpha_levels) {
        std::size_t cnt[3] = {0, 0, 0};
        for (double lg : lgs) {
            HardwareProfile hw{"grid", std::pow(10.0, lg), phi, cfg.hardware.noise_figure};
            for (double db : snrs) {
                double snr = db_to_lin(db);
                double it = snr * a;
                double v = std::sqrt(meas_variance(cfg.signal, hw, {0.0, snr, it}));
                Regime r = regime_classify(snr, hw, it);
                ++cnt[static_cast<int>(r)];
                t.rows.push_back({num(a), num(db), num(lg), num(v), to_string(r)});
            }
            if (auto s = contour_snr_db(cfg.signal, phi, hw.gamma_eff, a, rc.contour_rmse))
                ct.rows.push_back({num(a), num(lg), num(*s)});
        }
        double total = static_cast<double>(cnt[0] + cnt[1] + cnt[2]);
        double rate = contour_exchange_rate(cfg.signal, phi, a, rc.contour_rmse);
        sm.rows.push_back({num(a), num(rc.contour_rmse), std::isfinite(rate) ? num(rate) : Cell{"unreachable"},
                           num(static_cast<double>(cnt[2]) / total), num(static_cast<double>(cnt[1]) / total),
                           num(static_cast<double>(cnt[0]) / total)});
    }
    return {t, ct, sm};
}

std::vector<ResultTable> run_correlation_study(const ScenarioConfig& cfg) {
    const auto& cc = cfg.correlation;
    auto rhos = grid(cc.rho_min, cc.rho_max, cc.rho_step);
    for (double& r : rhos) r = std::round(r * 1e9) / 1e9;
    if (std::none_of(rhos.begin(), rhos.end(), [&](double r) { return std::abs(r - cc.info_rho) < 1e-12; }))
        rhos.push_back(cc.info_rho);
    std::sort(rhos.begin(), rhos.end());

    ConstellationGraph g = generate_geometry(cc.geometry);
    auto pts = correlation_sweep(g, rhos, cc.sigma_sq);
    auto t = make_table(cfg, "correlation",
                        {{"rho", ""}, {"info_per_dof_db", "dB re 1/m^2"}, {"info_loss_db", "dB"},
                         {"crlb_trace", "m^2"}, {"crlb_degradation", ""}, {"penalty_trace", ""},
                         {"penalty_rmse", ""}});
    for (const auto& p : pts)
        t.rows.push_back({num(p.rho), num(p.info_per_dof_db), num(p.info_loss_db), num(p.crlb_trace),
                          num(p.degradation), num(p.penalty), num(p.rmse_penalty)});

    auto s = make_table(cfg, "correlation_scaling",
                        {{"n_sat", ""}, {"links", ""}, {"rho", ""}, {"info_loss_db", "dB"}, {"crlb_degradation", ""},
                         {"penalty_rmse", ""}});
    for (int n : cc.scaling_counts) {
        GeometrySpec spec = cc.geometry;
        spec.kind = GeometryKind::Cubic;
        spec.count = n;
        ConstellationGraph gn = generate_geometry(spec);
        if (gn.links.empty()) continue;
        auto p = correlation_sweep(gn, {cc.info_rho}, cc.sigma_sq).front();
        s.rows.push_back({integer(n), integer(static_cast<long long>(gn.links.size())), num(cc.info_rho),
                          num(p.info_loss_db), num(p.degradation), num(p.rmse_penalty)});
    }
    return {t, s};
}

std::vector<ResultTable> run_ioo_study(const ScenarioConfig& cfg) {
    const auto& o = cfg.ioo;
    IooReconstruction rec = reconstruct_ioo(cfg);
    IooScenario sc = rec.scenario;
    const auto& geo = sc.geometry;

    auto t = make_table(cfg, "ioo_sweep",
                        {{"pg_db", "dB"}, {"echo_sinr_db", "dB"}, {"sigma_rb", "m"}, {"axis1", "m"}, {"axis2", "m"},
                         {"axis3", "m"}, {"info_gain_db", "dB"}, {"trace_gain_db", "dB"},
                         {"weak_axis_gain_db", "dB"}, {"volume_ratio", ""}});
    for (double pg : grid(o.pg_db_min, o.pg_db_max, o.pg_db_step)) {
        EchoBudget e = sc.echo;
        e.processing_gain = pg;
        IooFusion f = fuse_ioo(sc.prior, geo, sc.signal, sc.hardware, e);
        Vec3 ax = ellipsoid_axes(f.posterior);
        t.rows.push_back({num(pg), num(lin_to_db(bistatic_sinr(geo, e))),
                          num(std::sqrt(bistatic_range_variance(geo, sc.signal, sc.hardware, e))), num(ax(0)),
                          num(ax(1)), num(ax(2)), num(f.info_gain_db), num(f.trace_gain_db),
                          num(f.weak_axis_gain_db), num(f.volume_ratio)});
    }

    IooFusion f = fuse_ioo(sc.prior, geo, sc.signal, sc.hardware, sc.echo);
    Vec3 before = ellipsoid_axes(sc.prior);
    Vec3 after = ellipsoid_axes(f.posterior);
    Mat3 jio = ioo_fim(geo, sc.signal, sc.hardware, sc.echo);
    double beta = bistatic_angle(geo);
    double sig2 = bistatic_range_variance(geo, sc.signal, sc.hardware, sc.echo);
    Eigen::SelfAdjointEigenSolver<Mat3> es(jio, Eigen::EigenvaluesOnly);

    auto s = make_table(cfg, "ioo_summary", {{"quantity", ""}, {"value", ""}, {"unit", ""}});
    auto add = [&](const std::string& q, double v, const std::string& u) { s.rows.push_back({q, num(v), u}); };
    add("prior_axis1", before(0), "m");
    add("prior_axis2", before(1), "m");
    add("prior_axis3", before(2), "m");
    add("posterior_axis1", after(0), "m");
    add("posterior_axis2", after(1), "m");
    add("posterior_axis3", after(2), "m");
    add("major_axis_reduction", (1.0 - after(0) / before(0)) * 100.0, "%");
    add("info_gain_det", f.info_gain_db, "dB");
    add("info_gain_trace", f.trace_gain_db, "dB");
    add("info_gain_weak_axis", f.weak_axis_gain_db, "dB");
    add("volume_ratio", f.volume_ratio, "");
    add("sigma_rb", std::sqrt(sig2), "m");
    add("bistatic_angle", beta * 180.0 / kPi, "deg");
    add("echo_sinr_operating", lin_to_db(rec.operating_sinr), "dB");
    add("echo_sinr_raw", rec.raw_sinr_db, "dB");
    add("operating_pg", rec.operating_pg_db, "dB");
    add("n_eff", rec.n_eff, "W");
    add("n_eff_over_thermal", lin_to_db(rec.n_eff / rec.thermal_noise), "dB");
    for (double gdb : o.threshold_gains_db) {
        char name[64];
        std::snprintf(name, sizeof(name), "pg_threshold_%gdb", gdb);
        add(name, pg_threshold(sc, gdb), "dB");
    }
    add("rank1_eigenvalue", es.eigenvalues()(2), "1/m^2");
    add("rank1_eigenvalue_expected", 2.0 * (1.0 + std::cos(beta)) / sig2, "1/m^2");
    add("volume_ratio_det_check", std::sqrt(sc.prior.determinant() / f.posterior.determinant()), "");
    add("crossover", ioo_crossover(jio, sc.prior, o.alpha_lm, db_to_lin(o.sinr_comm_db)) ? 1.0 : 0.0, "");
    return {t, s};
}

std::vector<std::string> study_names() { return {"ceiling", "floor", "geometry", "regime", "correlation", "ioo"}; }

std::vector<ResultTable> run_study(const std::string& name, const ScenarioConfig& cfg) {
    if (name == "ceiling") return run_hw_ceiling_study(cfg);
    if (name == "floor") return run_pn_floor_study(cfg);
    if (name == "geometry") return run_geometry_study(cfg);
    if (name == "regime") return run_regime_map(cfg);
    if (name == "correlation") return run_correlation_study(cfg);
    if (name == "ioo") return run_ioo_study(cfg);
    throw Error("unknown study: " + name);
}

}  // namespace ncrlb
