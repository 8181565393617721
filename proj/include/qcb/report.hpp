#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace qcb {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "qcb-report-v1";

struct Check {
    std::string name;
    bool pass = false;
    std::string witness;  // failure detail, empty when passing
};

/// Ordered pass/fail records from a verification run.  Deterministic given
/// the inputs; carries no clocks so repeated runs serialize identically.
class Report {
public:
    void add(const std::string& name, bool pass, const std::string& witness = "");
    void merge(const Report& o);

    const std::vector<Check>& checks() const { return checks_; }
    size_t total() const { return checks_.size(); }
    size_t failed() const;
    bool all_pass() const { return failed() == 0; }

    nlohmann::json to_json() const;
    /// "17 checks, 0 failed"
    std::string summary_line() const;

private:
    std::vector<Check> checks_;
};

}  // namespace qcb
