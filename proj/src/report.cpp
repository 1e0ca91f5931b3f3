#include "padiclab/report.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace padiclab {

void RunReport::add(const std::string& name, bool pass, const std::string& detail,
                    long certified_precision) {
    CheckRecord rec;
    rec.name = name;
    rec.status = pass ? "pass" : "fail";
    rec.detail = detail;
    rec.certified_precision = certified_precision;
    checks.push_back(std::move(rec));
}

bool RunReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckRecord& c) { return c.status != "fail"; });
}

std::string RunReport::table() const {
    size_t width = 4;
    for (const auto& c : checks) width = std::max(width, c.name.size());
    std::ostringstream out;
    for (const auto& c : checks) {
        out << (c.passed() ? "[PASS] " : c.status == "skip" ? "[SKIP] " : "[FAIL] ");
        out << c.name;
        out << std::string(width - c.name.size() + 2, ' ');
        out << c.detail;
        if (c.certified_precision >= 0) out << " (certified precision " << c.certified_precision << ")";
        out << '\n';
    }
    return out.str();
}

std::string RunReport::to_json_string() const {
    nlohmann::json j;
    j["command"] = command;
    j["input_digest"] = input_digest;
    j["elapsed_seconds"] = elapsed_seconds;
    if (epsilon != 0) {
        j["epsilon"] = epsilon;
        j["epsilon_evidence"] = epsilon_evidence;
    }
    j["all_pass"] = all_pass();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json jc;
        jc["name"] = c.name;
        jc["status"] = c.status;
        jc["detail"] = c.detail;
        if (c.certified_precision >= 0) jc["certified_precision"] = c.certified_precision;
        j["checks"].push_back(std::move(jc));
    }
    return j.dump(2);
}

} // namespace padiclab
