#include "mvop/config.hpp"

#include <fstream>
#include <sstream>

namespace mvop {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_real(const std::string& token, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: field '" + key + "' has a malformed number '" + token + "'");
    }
}

int to_int(const std::string& token, const std::string& key) {
    const double v = to_real(token, key);
    if (v != static_cast<int>(v)) {
        throw ConfigError("config: field '" + key + "' must be an integer");
    }
    return static_cast<int>(v);
}

std::vector<std::string> tokens(const std::string& value) {
    std::string s = value;
    for (char& c : s) {
        if (c == ',') c = ' ';
    }
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

class Fields {
public:
    explicit Fields(std::map<std::string, std::string> raw) : raw_(std::move(raw)) {}

    bool has(const std::string& key) const { return raw_.count(key) != 0; }

    const std::string& require(const std::string& key) const {
        auto it = raw_.find(key);
        if (it == raw_.end()) {
            throw ConfigError("config: missing required field '" + key + "'");
        }
        return it->second;
    }

    const std::map<std::string, std::string>& raw() const { return raw_; }

private:
    std::map<std::string, std::string> raw_;
};

}  // namespace

std::vector<double> parse_reals(const std::string& value, const std::string& key) {
    std::vector<double> out;
    for (const std::string& t : tokens(value)) out.push_back(to_real(t, key));
    return out;
}

CMatrix parse_matrix(const std::string& value, int n, const std::string& key) {
    const auto toks = tokens(value);
    if (static_cast<int>(toks.size()) != n * n) {
        throw ConfigError("config: field '" + key + "' needs " + std::to_string(n * n) + " entries, got " +
                          std::to_string(toks.size()));
    }
    CMatrix m(n, n);
    for (int i = 0; i < n * n; ++i) {
        const std::string& t = toks[static_cast<std::size_t>(i)];
        const auto colon = t.find(':');
        if (colon == std::string::npos) {
            m(i / n, i % n) = Complex(to_real(t, key), 0.0);
        } else {
            m(i / n, i % n) = Complex(to_real(t.substr(0, colon), key), to_real(t.substr(colon + 1), key));
        }
    }
    return m;
}

WeightConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> raw;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: line " + std::to_string(lineno) + " is not of the form key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw ConfigError("config: line " + std::to_string(lineno) + " has an empty key");
        }
        raw[key] = trim(line.substr(eq + 1));
    }
    const Fields f(std::move(raw));
    const std::string family = f.require("family");

    auto build = [&]() -> std::pair<ExponentialWeight, FreudConvention> {
        if (family == "exponential") {
            const int n = to_int(f.require("N"), "N");
            if (n < 1) throw ConfigError("config: field 'N' must be positive");
            const ScalarPoly v(parse_reals(f.require("v"), "v"));
            const CMatrix a = parse_matrix(f.require("A"), n, "A");
            std::optional<CMatrix> left;
            if (f.has("left")) left = parse_matrix(f.require("left"), n, "left");
            return {ExponentialWeight(v, a, left), FreudConvention::WeightFactorization};
        }
        if (family == "hermite-alpha") {
            const auto alpha = parse_reals(f.require("alpha"), "alpha");
            if (f.has("N") && to_int(f.require("N"), "N") != static_cast<int>(alpha.size())) {
                throw ConfigError("config: field 'N' disagrees with the length of 'alpha'");
            }
            return {hermite_alpha_weight(alpha), FreudConvention::WeightFactorization};
        }
        if (family == "pearson-hermite") {
            const int n = to_int(f.require("N"), "N");
            ExponentialWeight w = hermite_alpha_weight(pearson_alpha_parameters(n));
            w.family = "pearson-hermite";
            return {w, FreudConvention::WeightFactorization};
        }
        if (family == "freud") {
            const int n = to_int(f.require("N"), "N");
            const double a = to_real(f.require("freud.alpha"), "freud.alpha");
            const double b = to_real(f.require("freud.beta"), "freud.beta");
            const double t = f.has("t") ? to_real(f.require("t"), "t") : 0.0;
            FreudConvention conv = FreudConvention::WeightFactorization;
            if (f.has("freud.t_sign")) {
                const std::string& s = f.require("freud.t_sign");
                if (s == "potential") {
                    conv = FreudConvention::Potential;
                } else if (s != "weight") {
                    throw ConfigError("config: field 'freud.t_sign' must be 'weight' or 'potential'");
                }
            }
            return {freud_weight(n, a, b, t, conv), conv};
        }
        throw ConfigError("config: unknown family '" + family + "'");
    };

    try {
        auto [w, conv] = build();
        WeightConfig cfg{family, std::move(w), 10, 0.0, conv, f.raw()};
        if (f.has("n_max")) cfg.n_max = to_int(f.require("n_max"), "n_max");
        if (f.has("t")) cfg.t = to_real(f.require("t"), "t");
        if (cfg.n_max < 0) throw ConfigError("config: field 'n_max' must be non-negative");
        return cfg;
    } catch (const DomainError& e) {
        throw ConfigError(std::string("config: invalid weight: ") + e.what());
    }
}

WeightConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace mvop
