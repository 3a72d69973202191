#include "horoxt/report.hpp"

#include <cstdio>

#include "json.hpp"

#include "horoxt/version.hpp"

namespace horoxt {

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void CsvTable::write(std::ostream& os) const {
    os << "# version: " << version_string << "\n";
    for (const auto& [key, value] : meta) os << "# " << key << ": " << value << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) os << ',';
        os << columns[i];
    }
    os << "\n";
    for (const std::vector<double>& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << format_real(row[i]);
        }
        os << "\n";
    }
}

void ExperimentReport::write_json(std::ostream& os) const {
    nlohmann::ordered_json j;
    j["version"] = version_string;
    j["command"] = command;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [key, value] : config) cfg[key] = value;
    j["config"] = cfg;
    j["seed"] = seed;
    j["samples"] = samples;
    if (has_ks) j["ks"] = ks;
    if (!grid.empty()) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const std::array<double, 3>& g : grid)
            rows.push_back({g[0], g[1], g[2]});
        j["grid"] = rows;
    }
    os << j.dump(2) << "\n";
}

}
