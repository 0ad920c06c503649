#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace conelab {

// Cross-module invariant suite. Every check is deterministic for a fixed
// seed; numeric tolerances are multiplied by tolerance_scale (so 0 demands
// exact floating-point identities and is unsatisfiable by design).
// flip_scalar_corner negates the bottom-right entry of the rescaled scalar
// matrix inside the determinant check — a mutation hook proving that the
// identity test has teeth.
struct CheckOptions {
    double tolerance_scale = 1.0;
    bool flip_scalar_corner = false;
    std::uint64_t seed = 0x5EED;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CheckReport {
    CheckOptions options;
    std::vector<CheckResult> results;
    bool all_pass = false;
};

CheckReport run_checks(const CheckOptions& options);

// Human-readable report: one PASS/FAIL line per check plus a summary line.
std::string render_check_report(const CheckReport& report);

} // namespace conelab
