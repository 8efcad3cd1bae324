#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ncrlb/experiments.hpp"

namespace ncrlb {

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw Error("cannot write " + p.string());
    os << text;
}

std::string hash_hex(std::uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int run(const std::vector<std::string>& studies, const ScenarioConfig& cfg) {
    fs::path out = cfg.output_path;
    fs::create_directories(out);
    nlohmann::json manifest;
    manifest["version"] = kToolVersion;
    manifest["schema_version"] = kSchemaVersion;
    manifest["config_hash"] = hash_hex(config_hash(cfg));
    manifest["seed"] = cfg.seed;
    manifest["format"] = cfg.output_format;
    nlohmann::json files = nlohmann::json::array();
    for (const auto& name : studies) {
        auto t0 = std::chrono::steady_clock::now();
        auto tables = run_study(name, cfg);
        for (const auto& t : tables) {
            std::string file = t.id + "." + cfg.output_format;
            write_file(out / file, cfg.output_format == "json" ? to_json(t) : to_csv(t));
            files.push_back({{"study", name}, {"table", t.id}, {"file", file}, {"rows", t.rows.size()}});
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cerr << name << ": " << tables.size() << " tables in " << dt << " s\n";
    }
    manifest["tables"] = files;
    write_file(out / "manifest.json", manifest.dump(2) + "\n");
    write_file(out / "config.json", config_to_json(cfg) + "\n");
    return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"network CRLB studies for ISAC satellite constellations", "ncrlb"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::string format;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "scenario config (JSON)");
        sub->add_option("--seed", seed, "override monte_carlo.seed");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };

    std::vector<CLI::App*> subs;
    for (const auto& name : study_names()) subs.push_back(app.add_subcommand(name, "run the " + name + " study"));
    subs.push_back(app.add_subcommand("all", "run every study"));
    auto* validate = app.add_subcommand("validate-config", "parse and validate a config, print canonical form");
    for (auto* s : subs) add_common(s);
    add_common(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return 2;
    }

    ScenarioConfig cfg;
    try {
        if (!config_path.empty()) cfg = load_config(config_path);
        if (seed) cfg.seed = *seed;
        if (!out_dir.empty()) cfg.output_path = out_dir;
        if (!format.empty()) cfg.output_format = format;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (validate->parsed()) {
            std::cout << config_to_json(cfg) << "\nconfig_hash " << hash_hex(config_hash(cfg)) << "\n";
            return 0;
        }
        for (auto* s : subs) {
            if (!s->parsed()) continue;
            if (s->get_name() == "all") return run(study_names(), cfg);
            return run({s->get_name()}, cfg);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace ncrlb
