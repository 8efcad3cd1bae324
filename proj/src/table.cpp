#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "ncrlb/experiments.hpp"

namespace ncrlb {

namespace {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string hex64(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

int ResultTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i].name == name) return static_cast<int>(i);
    throw Error("table " + id + " has no column " + name);
}

double ResultTable::value(std::size_t row, const std::string& name) const {
    const Cell& c = rows.at(row).at(static_cast<std::size_t>(column(name)));
    if (auto d = std::get_if<double>(&c)) return *d;
    if (auto i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
    throw Error("column " + name + " is not numeric");
}

std::string ResultTable::text(std::size_t row, const std::string& name) const {
    const Cell& c = rows.at(row).at(static_cast<std::size_t>(column(name)));
    if (auto s = std::get_if<std::string>(&c)) return *s;
    if (auto i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    return format_double(std::get<double>(c));
}

std::string to_csv(const ResultTable& t) {
    std::ostringstream os;
    os << "# study=" << t.id << " version=" << t.version << " config_hash=" << hex64(t.config_hash)
       << " seed=" << t.seed << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) os << ',';
        const auto& c = t.columns[i];
        os << csv_escape(c.unit.empty() ? c.name : c.name + " [" + c.unit + "]");
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) os << format_double(v);
                    else if constexpr (std::is_same_v<T, std::int64_t>) os << v;
                    else os << csv_escape(v);
                },
                row[i]);
        }
        os << '\n';
    }
    return os.str();
}

std::string to_json(const ResultTable& t) {
    using nlohmann::json;
    json j;
    j["study"] = t.id;
    j["provenance"] = {{"version", t.version}, {"config_hash", hex64(t.config_hash)}, {"seed", t.seed}};
    json cols = json::array();
    for (const auto& c : t.columns) cols.push_back({{"name", c.name}, {"unit", c.unit}});
    j["columns"] = cols;
    json rows = json::array();
    for (const auto& row : t.rows) {
        json r = json::array();
        for (const auto& c : row) {
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        if (std::isfinite(v)) r.push_back(v);
                        else r.push_back(format_double(v));
                    } else {
                        r.push_back(v);
                    }
                },
                c);
        }
        rows.push_back(r);
    }
    j["rows"] = rows;
    return j.dump(1) + "\n";
}

}  // namespace ncrlb
