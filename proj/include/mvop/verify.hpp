#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mvop/config.hpp"
#include "mvop/io.hpp"

namespace mvop {

/// One verified identity. max_residual is compared against tolerance with <.
struct Check {
    std::string id;
    std::string anchor;
    std::string suite;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
    json details = json::array();
};

struct VerifyOptions {
    /// Replaces the built-in families of the ladder and string suites.
    std::optional<WeightConfig> config;
    /// Replaces every tolerance.
    std::optional<double> tolerance;
};

struct VerifyReport {
    std::string suite;
    std::vector<Check> checks;
    /// Checks that are expected to fail; reported, never counted.
    std::vector<Check> known_discrepancies;
    double seconds = 0.0;

    bool all_pass() const;
};

/// ladder, string, dpainleve, hermite-fast, casimir, pearson, toda, lax,
/// duran-ismail, all.
const std::vector<std::string>& suite_names();

/// Anchor labels the checks may cite.
const std::vector<std::string>& anchor_set();

/// Runs a suite; checks run concurrently and come back sorted by id.
/// ConfigError on an unknown suite. ConditioningError propagates.
VerifyReport run_suite(const std::string& suite, const VerifyOptions& opts = {});

json report_to_json(const VerifyReport& r);

}  // namespace mvop
