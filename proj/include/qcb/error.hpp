#pragma once

#include <stdexcept>
#include <string>

namespace qcb {

/// Raised on violated preconditions and failed internal invariants.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void check(bool cond, const std::string& msg) {
    if (!cond) throw error(msg);
}

}  // namespace qcb
