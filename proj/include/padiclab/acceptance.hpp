#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "padiclab/report.hpp"

namespace padiclab {

struct AcceptanceOptions {
    long jobs = 1;
    unsigned long seed = 20260814;
    std::optional<std::string> cache_dir;
    std::ostream* progress = nullptr; // per-criterion lines when set
};

// The ten-criterion battery. Every criterion contributes exactly one check
// record; the report carries the global sign ledger.
RunReport run_acceptance(const AcceptanceOptions& opts);

} // namespace padiclab
