#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ncrlb/experiments.hpp"

namespace ncrlb {

using nlohmann::json;

namespace {

// reads known keys from an object and rejects everything else
class Reader {
public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(where() + ": expected an object");
    }

    template <class T>
    void get(const std::string& key, T& out) {
        seen_.insert(key);
        if (!j_.contains(key)) return;
        try {
            out = j_.at(key).get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(where(key) + ": " + e.what());
        }
    }

    void get(const std::string& key, Vec3& out) {
        std::vector<double> v;
        get(key, v);
        if (!j_.contains(key)) return;
        if (v.size() != 3) throw ConfigError(where(key) + ": expected 3 numbers");
        out = Vec3(v[0], v[1], v[2]);
    }

    const json* sub(const std::string& key) {
        seen_.insert(key);
        return j_.contains(key) ? &j_.at(key) : nullptr;
    }

    void finish() const {
        for (const auto& [k, v] : j_.items())
            if (!seen_.count(k)) throw ConfigError("unknown key: " + where(k));
    }

    std::string where(const std::string& key = "") const {
        std::string p = path_.empty() ? key : (key.empty() ? path_ : path_ + "." + key);
        return p.empty() ? "<root>" : p;
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

void read_geometry(const json& j, const std::string& path, GeometrySpec& g) {
    Reader r(j, path);
    std::string kind = to_string(g.kind);
    r.get("kind", kind);
    try {
        g.kind = parse_geometry_kind(kind);
    } catch (const Error& e) {
        throw ConfigError(r.where("kind") + ": " + e.what());
    }
    r.get("count", g.count);
    r.get("altitude", g.altitude);
    r.get("scale", g.scale);
    r.get("perturbation_sigma", g.perturbation_sigma);
    r.get("seed", g.seed);
    r.get("max_range", g.max_range);
    r.finish();
    require(g.count >= 2, path + ".count must be >= 2");
    require(g.scale > 0 && g.max_range > 0 && g.perturbation_sigma >= 0, path + ": scale, max_range must be positive");
    require(g.kind != GeometryKind::Cubic || g.count <= 8, path + ": cubic supports at most 8 satellites");
    require(g.kind != GeometryKind::Octahedral || g.count <= 6, path + ": octahedral supports at most 6 satellites");
}

json geometry_json(const GeometrySpec& g) {
    return {{"kind", to_string(g.kind)}, {"count", g.count},           {"altitude", g.altitude},
            {"scale", g.scale},          {"perturbation_sigma", g.perturbation_sigma},
            {"seed", g.seed},            {"max_range", g.max_range}};
}

void check_grid(double lo, double hi, double step, const std::string& what) {
    require(step > 0 && hi >= lo, what + ": grid needs step > 0 and max >= min");
    require((hi - lo) / step < 1e6, what + ": grid too large");
}

void read_studies(const json& j, ScenarioConfig& c) {
    Reader r(j, "studies");
    if (const json* s = r.sub("ceiling")) {
        Reader q(*s, "studies.ceiling");
        auto& x = c.ceiling;
        q.get("snr_db_min", x.snr_db_min);
        q.get("snr_db_max", x.snr_db_max);
        q.get("snr_db_step", x.snr_db_step);
        q.get("profiles", x.profiles);
        q.finish();
        check_grid(x.snr_db_min, x.snr_db_max, x.snr_db_step, "studies.ceiling");
        for (const auto& p : x.profiles) {
            try {
                HardwareProfile::by_name(p);
            } catch (const Error& e) {
                throw ConfigError(std::string("studies.ceiling.profiles: ") + e.what());
            }
        }
    }
    if (const json* s = r.sub("floor")) {
        Reader q(*s, "studies.floor");
        auto& x = c.floor;
        q.get("sigma_phi_sq", x.sigma_phi_sq);
        q.get("carriers", x.carriers);
        q.get("snr_db_min", x.snr_db_min);
        q.get("snr_db_max", x.snr_db_max);
        q.get("snr_db_step", x.snr_db_step);
        q.get("asymptote_snr", x.asymptote_snr);
        q.finish();
        check_grid(x.snr_db_min, x.snr_db_max, x.snr_db_step, "studies.floor");
        for (double v : x.sigma_phi_sq) require(v > 0, "studies.floor.sigma_phi_sq must be positive");
        for (double v : x.carriers) require(v > 0, "studies.floor.carriers must be positive");
    }
    if (const json* s = r.sub("geometry")) {
        Reader q(*s, "studies.geometry");
        auto& x = c.geometry_study;
        q.get("counts", x.counts);
        q.get("kinds", x.kinds);
        std::string cm = x.clock_model == ClockModel::Synchronized ? "synchronized" : "estimated";
        q.get("clock_model", cm);
        q.finish();
        require(cm == "synchronized" || cm == "estimated", "studies.geometry.clock_model must be synchronized|estimated");
        x.clock_model = cm == "synchronized" ? ClockModel::Synchronized : ClockModel::Estimated;
        for (int n : x.counts) require(n >= 2 && n <= 8, "studies.geometry.counts must lie in [2, 8]");
        for (const auto& k : x.kinds)
            require(k == "planar" || k == "cubic" || k == "random", "studies.geometry.kinds: unknown kind " + k);
    }
    if (const json* s = r.sub("regime")) {
        Reader q(*s, "studies.regime");
        auto& x = c.regime;
        q.get("snr_db_min", x.snr_db_min);
        q.get("snr_db_max", x.snr_db_max);
        q.get("snr_db_step", x.snr_db_step);
        q.get("log10_gamma_min", x.log10_gamma_min);
        q.get("log10_gamma_max", x.log10_gamma_max);
        q.get("log10_gamma_step", x.log10_gamma_step);
        q.get("alpha_levels", x.alpha_levels);
        q.get("contour_rmse", x.contour_rmse);
        q.finish();
        check_grid(x.snr_db_min, x.snr_db_max, x.snr_db_step, "studies.regime snr");
        check_grid(x.log10_gamma_min, x.log10_gamma_max, x.log10_gamma_step, "studies.regime gamma");
        for (double a : x.alpha_levels) require(a >= 0, "studies.regime.alpha_levels must be >= 0");
        require(x.contour_rmse > 0, "studies.regime.contour_rmse must be positive");
    }
    if (const json* s = r.sub("correlation")) {
        Reader q(*s, "studies.correlation");
        auto& x = c.correlation;
        if (const json* g = q.sub("geometry")) read_geometry(*g, "studies.correlation.geometry", x.geometry);
        q.get("rho_min", x.rho_min);
        q.get("rho_max", x.rho_max);
        q.get("rho_step", x.rho_step);
        q.get("sigma_sq", x.sigma_sq);
        q.get("info_rho", x.info_rho);
        q.get("scaling_counts", x.scaling_counts);
        q.finish();
        check_grid(x.rho_min, x.rho_max, x.rho_step, "studies.correlation");
        require(x.rho_min >= 0 && x.rho_max < 1, "studies.correlation: rho must lie in [0, 1)");
        require(x.info_rho >= 0 && x.info_rho < 1, "studies.correlation.info_rho must lie in [0, 1)");
        require(x.sigma_sq > 0, "studies.correlation.sigma_sq must be positive");
        for (int n : x.scaling_counts) require(n >= 2 && n <= 8, "studies.correlation.scaling_counts must lie in [2, 8]");
    }
    if (const json* s = r.sub("ioo")) {
        Reader q(*s, "studies.ioo");
        auto& x = c.ioo;
        q.get("prior_axes", x.prior_axes);
        q.get("target_major_axis", x.target_major_axis);
        q.get("bistatic_angle_deg", x.bistatic_angle_deg);
        q.get("target_range", x.target_range);
        q.get("rcs", x.rcs);
        q.get("processing_loss_db", x.processing_loss_db);
        q.get("calibration_gain_db", x.calibration_gain_db);
        q.get("calibration_pg_db", x.calibration_pg_db);
        q.get("threshold_gains_db", x.threshold_gains_db);
        q.get("pg_db_min", x.pg_db_min);
        q.get("pg_db_max", x.pg_db_max);
        q.get("pg_db_step", x.pg_db_step);
        q.get("alpha_lm", x.alpha_lm);
        q.get("sinr_comm_db", x.sinr_comm_db);
        q.finish();
        check_grid(x.pg_db_min, x.pg_db_max, x.pg_db_step, "studies.ioo");
        require((x.prior_axes.array() > 0).all(), "studies.ioo.prior_axes must be positive");
        require(x.target_major_axis > 0 && x.target_major_axis < x.prior_axes(0),
                "studies.ioo.target_major_axis must be positive and below the prior weak axis");
        require(x.bistatic_angle_deg >= 0 && x.bistatic_angle_deg < 180, "studies.ioo.bistatic_angle_deg must lie in [0, 180)");
        require(x.target_range > 0 && x.rcs > 0, "studies.ioo: target_range and rcs must be positive");
        require(x.calibration_gain_db > 0, "studies.ioo.calibration_gain_db must be positive");
    }
    r.finish();
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    ScenarioConfig c;
    Reader r(j, "");
    int version = kSchemaVersion;
    r.get("schema_version", version);
    require(version == kSchemaVersion, "unsupported schema_version " + std::to_string(version));

    if (const json* g = r.sub("geometry")) read_geometry(*g, "geometry", c.geometry);

    if (const json* s = r.sub("signal")) {
        Reader q(*s, "signal");
        q.get("f_c", c.signal.f_c);
        q.get("bandwidth", c.signal.bandwidth);
        q.get("tx_power", c.signal.tx_power);
        q.get("tx_gain_dbi", c.signal.tx_gain);
        q.get("rx_gain_dbi", c.signal.rx_gain);
        q.get("rms_bandwidth", c.signal.rms_bandwidth_beta);
        q.finish();
        require(c.signal.f_c > 0 && c.signal.bandwidth > 0 && c.signal.tx_power > 0,
                "signal: f_c, bandwidth, tx_power must be positive");
        require(c.signal.rms_bandwidth_beta >= 0 && c.signal.beta() <= c.signal.bandwidth,
                "signal.rms_bandwidth must lie in (0, bandwidth]");
    }

    if (const json* h = r.sub("hardware")) {
        if (h->is_string()) {
            try {
                c.hardware = HardwareProfile::by_name(h->get<std::string>());
            } catch (const Error& e) {
                throw ConfigError(std::string("hardware: ") + e.what());
            }
        } else {
            Reader q(*h, "hardware");
            c.hardware.name = "custom";
            q.get("name", c.hardware.name);
            q.get("gamma_eff", c.hardware.gamma_eff);
            q.get("sigma_phi_sq", c.hardware.sigma_phi_sq);
            q.get("noise_figure_db", c.hardware.noise_figure);
            q.finish();
            require(c.hardware.gamma_eff >= 0 && c.hardware.sigma_phi_sq >= 0,
                    "hardware: gamma_eff and sigma_phi_sq must be >= 0");
        }
    }

    if (const json* s = r.sub("jitter")) {
        Reader q(*s, "jitter");
        q.get("sigma_e", c.jitter.sigma_e);
        q.finish();
        require(c.jitter.sigma_e >= 0, "jitter.sigma_e must be >= 0");
    }
    if (const json* s = r.sub("beam")) {
        Reader q(*s, "beam");
        q.get("theta", c.beam_theta);
        q.finish();
        require(c.beam_theta > 0, "beam.theta must be positive");
    }
    if (const json* s = r.sub("process_noise")) {
        Reader q(*s, "process_noise");
        q.get("sigma_a_sq", c.noise.sigma_a_sq);
        q.get("sigma_y_sq", c.noise.sigma_y_sq);
        q.get("clock_drift_psd", c.noise.clock_drift_psd);
        q.finish();
        require(c.noise.sigma_a_sq >= 0 && c.noise.sigma_y_sq >= 0 && c.noise.clock_drift_psd >= 0,
                "process_noise: densities must be >= 0");
    }
    if (const json* s = r.sub("monte_carlo")) {
        Reader q(*s, "monte_carlo");
        q.get("realizations", c.realizations);
        q.get("seed", c.seed);
        q.finish();
        require(c.realizations >= 1, "monte_carlo.realizations must be >= 1");
    }
    if (const json* s = r.sub("outputs")) {
        Reader q(*s, "outputs");
        q.get("path", c.output_path);
        q.get("format", c.output_format);
        q.finish();
        require(c.output_format == "csv" || c.output_format == "json", "outputs.format must be csv|json");
    }
    if (const json* s = r.sub("studies")) read_studies(*s, c);
    r.finish();
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string config_to_json(const ScenarioConfig& c) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["geometry"] = geometry_json(c.geometry);
    j["signal"] = {{"f_c", c.signal.f_c},
                   {"bandwidth", c.signal.bandwidth},
                   {"tx_power", c.signal.tx_power},
                   {"tx_gain_dbi", c.signal.tx_gain},
                   {"rx_gain_dbi", c.signal.rx_gain},
                   {"rms_bandwidth", c.signal.rms_bandwidth_beta}};
    j["hardware"] = {{"name", c.hardware.name},
                     {"gamma_eff", c.hardware.gamma_eff},
                     {"sigma_phi_sq", c.hardware.sigma_phi_sq},
                     {"noise_figure_db", c.hardware.noise_figure}};
    j["jitter"] = {{"sigma_e", c.jitter.sigma_e}};
    j["beam"] = {{"theta", c.beam_theta}};
    j["process_noise"] = {{"sigma_a_sq", c.noise.sigma_a_sq},
                          {"sigma_y_sq", c.noise.sigma_y_sq},
                          {"clock_drift_psd", c.noise.clock_drift_psd}};
    j["monte_carlo"] = {{"realizations", c.realizations}, {"seed", c.seed}};
    j["outputs"] = {{"path", c.output_path}, {"format", c.output_format}};

    json st;
    st["ceiling"] = {{"snr_db_min", c.ceiling.snr_db_min},
                     {"snr_db_max", c.ceiling.snr_db_max},
                     {"snr_db_step", c.ceiling.snr_db_step},
                     {"profiles", c.ceiling.profiles}};
    st["floor"] = {{"sigma_phi_sq", c.floor.sigma_phi_sq}, {"carriers", c.floor.carriers},
                   {"snr_db_min", c.floor.snr_db_min},     {"snr_db_max", c.floor.snr_db_max},
                   {"snr_db_step", c.floor.snr_db_step},   {"asymptote_snr", c.floor.asymptote_snr}};
    st["geometry"] = {{"counts", c.geometry_study.counts},
                      {"kinds", c.geometry_study.kinds},
                      {"clock_model", c.geometry_study.clock_model == ClockModel::Synchronized ? "synchronized" : "estimated"}};
    st["regime"] = {{"snr_db_min", c.regime.snr_db_min},
                    {"snr_db_max", c.regime.snr_db_max},
                    {"snr_db_step", c.regime.snr_db_step},
                    {"log10_gamma_min", c.regime.log10_gamma_min},
                    {"log10_gamma_max", c.regime.log10_gamma_max},
                    {"log10_gamma_step", c.regime.log10_gamma_step},
                    {"alpha_levels", c.regime.alpha_levels},
                    {"contour_rmse", c.regime.contour_rmse}};
    st["correlation"] = {{"geometry", geometry_json(c.correlation.geometry)},
                         {"rho_min", c.correlation.rho_min},
                         {"rho_max", c.correlation.rho_max},
                         {"rho_step", c.correlation.rho_step},
                         {"sigma_sq", c.correlation.sigma_sq},
                         {"info_rho", c.correlation.info_rho},
                         {"scaling_counts", c.correlation.scaling_counts}};
    const auto& o = c.ioo;
    st["ioo"] = {{"prior_axes", {o.prior_axes(0), o.prior_axes(1), o.prior_axes(2)}},
                 {"target_major_axis", o.target_major_axis},
                 {"bistatic_angle_deg", o.bistatic_angle_deg},
                 {"target_range", o.target_range},
                 {"rcs", o.rcs},
                 {"processing_loss_db", o.processing_loss_db},
                 {"calibration_gain_db", o.calibration_gain_db},
                 {"calibration_pg_db", o.calibration_pg_db},
                 {"threshold_gains_db", o.threshold_gains_db},
                 {"pg_db_min", o.pg_db_min},
                 {"pg_db_max", o.pg_db_max},
                 {"pg_db_step", o.pg_db_step},
                 {"alpha_lm", o.alpha_lm},
                 {"sinr_comm_db", o.sinr_comm_db}};
    j["studies"] = st;
    return j.dump(2);
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
    // FNV-1a over the canonical dump; output path is not part of the scenario
    ScenarioConfig c = cfg;
    c.output_path.clear();
    c.output_format.clear();
    std::string s = config_to_json(c);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace ncrlb
