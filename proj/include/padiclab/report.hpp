#pragma once

#include <string>
#include <vector>

namespace padiclab {

struct CheckRecord {
    std::string name;
    std::string status; // "pass" | "fail" | "skip"
    std::string detail;
    long certified_precision = -1; // -1 when not applicable

    bool passed() const { return status == "pass"; }
};

// One report per command run; check records are deterministic given inputs,
// timing lives outside the records so runs can be diffed.
struct RunReport {
    std::string command;
    std::string input_digest;
    std::vector<CheckRecord> checks;
    int epsilon = 0; // global sign ledger, 0 = not applicable to this run
    std::vector<std::string> epsilon_evidence;
    double elapsed_seconds = 0.0;

    void add(const std::string& name, bool pass, const std::string& detail,
             long certified_precision = -1);
    bool all_pass() const;
    std::string table() const;
    std::string to_json_string() const;
};

} // namespace padiclab
