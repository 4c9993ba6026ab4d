#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace modulus::audit {

struct AuditOptions {
    std::uint64_t seed = 42;
    // Overrides every suite's default sample count when set.
    std::optional<std::size_t> samples;
    // Replaces the tolerance of every non-exact check when set.
    std::optional<double> tolerance;
    // Per-check tolerance overrides by check name; `tolerance` wins over these.
    std::map<std::string, double> check_tolerances;
    std::size_t series_order = 64;
    int lattice_cutoff = 200;
    unsigned index_cap = 32;
    bool timing = true;
};

struct CheckResult {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    std::size_t samples = 0;
    std::string worst_input;
};

struct AuditReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::vector<CheckResult> checks;
    double wall_ms = 0.0;

    bool pass() const;
};

// all, modularity, ramanujan, covering, qmaps, wdivision, structures.
const std::vector<std::string>& suite_names();

// Runs one suite. Throws UsageError for an unknown suite name.
AuditReport run_audit(std::string_view suite, const AuditOptions& options);

// {suite, seed, samples, checks: [{name, max_residual, tolerance, pass}], wall_ms}
std::string report_json(const AuditReport& report);
// One line per check plus a verdict; failing checks name their worst input.
std::string report_text(const AuditReport& report);

} // namespace modulus::audit
