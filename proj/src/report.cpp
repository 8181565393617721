#include "qcb/report.hpp"

#include <sstream>

namespace qcb {

void Report::add(const std::string& name, bool pass, const std::string& witness) {
    checks_.push_back(Check{name, pass, pass ? std::string() : witness});
}

void Report::merge(const Report& o) {
    checks_.insert(checks_.end(), o.checks_.begin(), o.checks_.end());
}

size_t Report::failed() const {
    size_t n = 0;
    for (const auto& c : checks_)
        if (!c.pass) ++n;
    return n;
}

nlohmann::json Report::to_json() const {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : checks_) {
        nlohmann::json jc{{"name", c.name}, {"pass", c.pass}};
        if (!c.witness.empty()) jc["witness"] = c.witness;
        checks.push_back(std::move(jc));
    }
    return nlohmann::json{
        {"schema", kReportSchema},
        {"version", kVersion},
        {"summary",
         {{"total", total()}, {"passed", total() - failed()}, {"failed", failed()}}},
        {"checks", std::move(checks)},
    };
}

std::string Report::summary_line() const {
    std::ostringstream out;
    out << total() << " checks, " << failed() << " failed";
    return out.str();
}

}  // namespace qcb
