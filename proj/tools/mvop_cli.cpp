// mvop: compute, check and export matrix-valued orthogonal polynomial families.
//
// Exit codes: 0 ok, 1 a check failed, 2 bad config or usage, 3 conditioning.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mvop/config.hpp"
#include "mvop/deformation.hpp"
#include "mvop/hermite_fast.hpp"
#include "mvop/io.hpp"
#include "mvop/ladder.hpp"
#include "mvop/oracle.hpp"
#include "mvop/verify.hpp"

namespace {

using namespace mvop;

constexpr int kExitCheck = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConditioning = 3;

struct Options {
    std::string config;
    std::optional<int> n_max;
    std::optional<double> tol;
    std::string out;
    std::string suite;
    int flow_j = 1;
    double t = 1.0;
    double h = 1e-3;
    std::string alpha;
    int n = 10;
};

/// Writes to --out when given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

WeightConfig require_config(const Options& o) {
    if (o.config.empty()) throw ConfigError("--config is required");
    WeightConfig cfg = load_config(o.config);
    if (o.n_max) cfg.n_max = *o.n_max;
    return cfg;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_compute(const Options& o) {
    const WeightConfig cfg = require_config(o);
    const MVOPFamily fam = gram_schmidt_family(cfg.weight, cfg.n_max);
    json j = family_to_json(fam);
    j["summary"] = {{"recurrence_residual", recurrence_residual(fam, default_grid())},
                    {"orthogonality_defect", orthogonality_defect(fam)}};
    Sink sink(o.out);
    sink.get() << j.dump(2) << '\n';
    return 0;
}

int cmd_fast_hermite(const Options& o) {
    if (o.alpha.empty()) throw ConfigError("--alpha is required");
    const auto alpha = parse_reals(o.alpha, "alpha");
    if (alpha.empty()) throw ConfigError("--alpha needs at least one value");
    const FastHermite fast = fast_hermite(alpha, o.n);
    Sink sink(o.out);
    sink.get() << fast_hermite_to_json(fast, default_grid()).dump(2) << '\n';
    return 0;
}

int cmd_verify(const Options& o) {
    VerifyOptions vo;
    if (!o.config.empty()) vo.config = require_config(o);
    vo.tolerance = o.tol;
    const VerifyReport r = run_suite(o.suite.empty() ? "all" : o.suite, vo);
    Sink sink(o.out);
    sink.get() << report_to_json(r).dump(2) << '\n';
    for (const Check& c : r.checks) {
        if (!c.pass) std::cerr << "FAIL " << c.id << " [" << c.anchor << "] " << c.max_residual << '\n';
    }
    return r.all_pass() ? 0 : kExitCheck;
}

int cmd_toda(const Options& o) {
    const WeightConfig cfg = require_config(o);
    if (o.h <= 0.0 || o.t < 0.0) throw ConfigError("--t must be >= 0 and --h > 0");
    const MVOPFamily fam = gram_schmidt_family(cfg.weight, cfg.n_max);
    const BlockTridiag l0 = BlockTridiag::from_family(fam, fam.n_max);
    const int every = std::max(1, static_cast<int>(0.01 / o.h + 0.5));
    const auto samples = toda_evolve(l0, o.flow_j, o.t, o.h, every);
    std::vector<int> blocks;
    for (int n = 0; n < std::min(3, l0.n_blocks); ++n) blocks.push_back(n);
    Sink sink(o.out);
    write_toda_csv(sink.get(), samples, blocks);
    return 0;
}

BenchRow bench_one(const std::string& family, const std::vector<double>& alpha, int n_max) {
    using clock = std::chrono::steady_clock;
    const auto xs = default_grid();
    auto t0 = clock::now();
    const MVOPFamily fam = gram_schmidt_family(hermite_alpha_weight(alpha), n_max);
    const double oracle_ms = elapsed_ms(t0);
    t0 = clock::now();
    const FastHermite fast = fast_hermite(alpha, n_max);
    const double fast_ms = elapsed_ms(t0);
    return {family, static_cast<int>(alpha.size()), n_max, oracle_ms, fast_ms,
            fast_vs_oracle(fast, fam, xs)};
}

int cmd_bench(const Options& o) {
    std::vector<BenchRow> rows;
    if (!o.config.empty()) {
        const WeightConfig cfg = require_config(o);
        if (cfg.weight.alpha.empty()) throw ConfigError("bench needs a hermite-alpha or pearson-hermite config");
        rows.push_back(bench_one(cfg.family, cfg.weight.alpha, cfg.n_max));
    } else {
        const int n_max = o.n_max.value_or(10);
        rows.push_back(bench_one("hermite-alpha", {1.0}, n_max));
        rows.push_back(bench_one("hermite-alpha", {1.0, 0.7}, n_max));
        rows.push_back(bench_one("hermite-alpha", {1.0, 0.7, 2.0}, n_max));
    }
    Sink sink(o.out);
    write_bench_csv(sink.get(), rows);
    return 0;
}

int cmd_export(const Options& o) {
    const WeightConfig cfg = require_config(o);
    if (o.out.empty()) throw ConfigError("export needs --out (used as a file prefix)");
    const MVOPFamily fam = gram_schmidt_family(cfg.weight, cfg.n_max);
    {
        std::ofstream f(o.out + ".family.json");
        f << family_to_json(fam).dump(2) << '\n';
    }
    {
        std::ofstream f(o.out + ".H.csv");
        write_h_diagonal_csv(f, fam.H);
    }
    const LadderPair lp = ladder_pair(fam);
    {
        std::ofstream f(o.out + ".lowering.json");
        f << diffop_to_json(lp.M).dump(2) << '\n';
    }
    {
        std::ofstream f(o.out + ".raising.json");
        f << diffop_to_json(lp.Mdag).dump(2) << '\n';
    }
    std::cout << "wrote " << o.out << ".{family.json,H.csv,lowering.json,raising.json}\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matrix-valued orthogonal polynomials: oracle, fast Hermite path, identity checks"};
    app.require_subcommand(1);
    Options o;

    auto* compute = app.add_subcommand("compute", "Gram-Schmidt family as JSON");
    compute->add_option("--config", o.config, "weight config file")->required();
    compute->add_option("--n-max", o.n_max, "override n_max");
    compute->add_option("--out", o.out, "output file (default stdout)");

    auto* fast = app.add_subcommand("fast-hermite", "H, xi and sampled P for a Hermite-alpha weight");
    fast->add_option("--alpha", o.alpha, "alpha_1 ... alpha_N, comma or space separated")->required();
    fast->add_option("--n", o.n, "largest degree")->check(CLI::NonNegativeNumber);
    fast->add_option("--out", o.out, "output file (default stdout)");

    auto* verify = app.add_subcommand("verify", "run a verification suite, JSON report");
    verify->add_option("--suite,suite", o.suite, "suite name (default all)");
    verify->add_option("--config", o.config, "weight for the ladder and string suites");
    verify->add_option("--n-max", o.n_max, "override the config n_max");
    verify->add_option("--tol", o.tol, "replace every tolerance");
    verify->add_option("--out", o.out, "output file (default stdout)");

    auto* toda = app.add_subcommand("toda-evolve", "RK4 trajectory of dL/dt = [L, (L^j)_+] as CSV");
    toda->set_help_flag("--help", "print this help and exit");  // --h is the step size
    toda->add_option("--config", o.config, "weight config file")->required();
    toda->add_option("--n-max", o.n_max, "number of blocks");
    toda->add_option("--flow-j", o.flow_j, "flow index j")->check(CLI::PositiveNumber);
    toda->add_option("--t", o.t, "final time");
    toda->add_option("--h", o.h, "step size");
    toda->add_option("--out", o.out, "output file (default stdout)");

    auto* bench = app.add_subcommand("bench", "oracle vs fast path wall time, CSV");
    bench->add_option("--config", o.config, "hermite-alpha config (default: N = 1, 2, 3)");
    bench->add_option("--n-max", o.n_max, "largest degree");
    bench->add_option("--out", o.out, "output file (default stdout)");

    auto* exp = app.add_subcommand("export", "family JSON, H diagonal CSV and ladder operators JSON");
    exp->add_option("--config", o.config, "weight config file")->required();
    exp->add_option("--n-max", o.n_max, "override n_max");
    exp->add_option("--out", o.out, "output file prefix")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*compute) return cmd_compute(o);
        if (*fast) return cmd_fast_hermite(o);
        if (*verify) return cmd_verify(o);
        if (*toda) return cmd_toda(o);
        if (*bench) return cmd_bench(o);
        if (*exp) return cmd_export(o);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConditioningError& e) {
        std::cerr << "conditioning: " << e.what() << '\n';
        return kExitConditioning;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheck;
    }
    return kExitUsage;
}
