#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace horoxt {

// 17 significant digits, round-trip exact for 64-bit floats.
std::string format_real(double x);

// Comma-separated, LF line endings, '#' comment header carrying the version,
// the full config echo and the seed.  Integer-valued cells print without a point.
struct CsvTable {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void write(std::ostream& os) const;
};

struct ExperimentReport {
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    bool has_ks = false;
    double ks = 0.0;
    std::vector<std::array<double, 3>> grid;   // value, empirical, analytic

    void write_json(std::ostream& os) const;
};

}
