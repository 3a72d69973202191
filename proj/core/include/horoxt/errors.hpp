#pragma once

#include <stdexcept>
#include <string>

namespace horoxt {

// Enumeration or simulation would exceed a configured size cap.
struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// A first-return search ran past its horizon cap without finding a hit.
struct horizon_error : std::runtime_error {
    explicit horizon_error(const std::string& what) : std::runtime_error(what) {}
};

// The independent crossing oracle failed to refine a peak.
struct oracle_error : std::runtime_error {
    explicit oracle_error(const std::string& what) : std::runtime_error(what) {}
};

}
