#pragma once

#include <map>
#include <string>
#include <vector>

#include "mvop/weights.hpp"

namespace mvop {

/// Weight configuration read from a key-value text file.
///
///     # comment
///     family = hermite-alpha      # exponential | hermite-alpha | pearson-hermite | freud
///     N      = 2
///     alpha  = 1 0.5
///     n_max  = 10
///
/// See the README for the full key list. Missing required keys raise a
/// ConfigError naming the key.
struct WeightConfig {
    std::string family;
    ExponentialWeight weight;
    int n_max = 10;
    double t = 0.0;
    FreudConvention convention = FreudConvention::WeightFactorization;
    std::map<std::string, std::string> raw;
};

WeightConfig parse_config(const std::string& text);
WeightConfig load_config(const std::string& path);

/// Whitespace- or comma-separated real numbers.
std::vector<double> parse_reals(const std::string& value, const std::string& key);

/// N*N row-major entries, each "re" or "re:im".
CMatrix parse_matrix(const std::string& value, int n, const std::string& key);

}  // namespace mvop
