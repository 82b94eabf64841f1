// gpas: command-line front end for the Gamma Poisson Approximation Scheme.
//
// Standard output carries only the JSON (or CSV) payload; diagnostics and
// progress go to standard error.
//
// Exit codes: 0 success, 1 validation failure, 2 usage/domain error,
// 3 runtime budget error.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gpas/errors.hpp"
#include "gpas/estimator.hpp"
#include "gpas/ising.hpp"
#include "gpas/replicate.hpp"
#include "gpas/stats.hpp"
#include "gpas/tpa.hpp"
#include "gpas/validation.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

constexpr const char* kSeedEnv = "GPAS_SEED";
constexpr std::uint64_t kSourceRole = 0;
constexpr std::uint64_t kAuxRole = 1;

struct RunConfig {
    double epsilon = 0.2;
    double delta = 0.01;
    std::optional<std::int64_t> k;
    std::optional<double> mu;
    std::optional<std::size_t> width;
    std::optional<std::size_t> height;
    std::string edges_path;
    std::size_t replicates = 1000;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string output_path;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
    const char* env = std::getenv(kSeedEnv);
    if (!env || !*env) return 0;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        throw UsageError(std::string(kSeedEnv) + " must be an unsigned integer");
    }
}

ordered_json to_json(const gpas::Calibration& c) {
    return {{"epsilon", c.epsilon}, {"delta", c.delta}, {"k", c.k},
            {"p", c.p},             {"f_k", c.f_k},     {"f_km1", c.f_km1}};
}

ordered_json to_json(const gpas::GpasResult& r) {
    return {{"k", r.k}, {"t_prime", r.t_prime}, {"mu_hat", r.mu_hat}, {"draws_used", r.draws_used}};
}

ordered_json to_json(const gpas::ConfidenceInterval& ci) {
    return {{"lower", ci.lower}, {"upper", ci.upper}, {"coverage", ci.coverage}};
}

// Mean and sample standard deviation; the latter is null for a single value.
ordered_json mean_sd(const std::vector<double>& values) {
    const auto s = gpas::stats::summarize(values);
    ordered_json out{{"mean", s.mean}};
    out["sd"] = s.n > 1 ? ordered_json(s.stddev()) : ordered_json(nullptr);
    return out;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void emit(const RunConfig& cfg, const ordered_json& payload) {
    Output out(cfg.output_path);
    out.stream() << payload.dump(2) << '\n';
}

void require_json(const RunConfig& cfg, const char* command) {
    if (cfg.format != "json")
        throw UsageError(std::string(command) + " supports only --format json");
}

int cmd_calibrate(const RunConfig& cfg) {
    require_json(cfg, "calibrate");
    const auto cal = gpas::calibrate(cfg.epsilon, cfg.delta);
    ordered_json j{{"command", "calibrate"}};
    j.update(to_json(cal));
    emit(cfg, j);
    return kExitOk;
}

int cmd_estimate(const RunConfig& cfg) {
    require_json(cfg, "estimate");
    if (!cfg.mu) throw UsageError("estimate requires --mu");
    gpas::SyntheticPoissonSource source(*cfg.mu, gpas::replicate_stream(cfg.seed, 0, kSourceRole));
    gpas::RngStream aux = gpas::replicate_stream(cfg.seed, 0, kAuxRole);

    ordered_json j{{"command", "estimate"}, {"mu", *cfg.mu},     {"epsilon", cfg.epsilon},
                   {"delta", cfg.delta},    {"seed", cfg.seed}};
    gpas::GpasResult result;
    if (cfg.k) {
        j["calibration"] = nullptr;
        result = gpas::gpas(source, *cfg.k, aux);
    } else {
        const auto cal = gpas::calibrate(cfg.epsilon, cfg.delta);
        j["calibration"] = to_json(cal);
        result = gpas::exact_gpas(source, cal, aux);
    }
    j["result"] = to_json(result);
    j["ci"] = to_json(gpas::confidence_interval(result, 1.0 - cfg.delta));
    emit(cfg, j);
    return kExitOk;
}

int cmd_validate(const RunConfig& cfg) {
    require_json(cfg, "validate");
    std::cerr << "validate: " << cfg.replicates << " replicates per property, seed " << cfg.seed
              << '\n';
    const auto results = gpas::run_validation(cfg.replicates, cfg.seed);
    bool all = true;
    ordered_json props = ordered_json::array();
    for (const auto& r : results) {
        all = all && r.passed;
        ordered_json p{{"name", r.name},           {"passed", r.passed},
                       {"statistic", r.statistic}, {"threshold", r.threshold},
                       {"detail", r.detail}};
        p["warning"] = r.warning.empty() ? ordered_json(nullptr) : ordered_json(r.warning);
        props.push_back(p);
        std::cerr << (r.passed ? "PASS " : "FAIL ") << r.name << "  statistic=" << r.statistic
                  << " threshold=" << r.threshold
                  << (r.warning.empty() ? "" : "  [" + r.warning + "]") << '\n';
    }
    ordered_json j{{"command", "validate"},
                   {"replicates", cfg.replicates},
                   {"seed", cfg.seed},
                   {"alpha", gpas::kValidationAlpha},
                   {"passed", all},
                   {"properties", props}};
    emit(cfg, j);
    return all ? kExitOk : kExitValidation;
}

gpas::ising::Graph load_graph(const RunConfig& cfg, ordered_json& graph_json) {
    if (!cfg.edges_path.empty()) {
        std::ifstream in(cfg.edges_path);
        if (!in) throw UsageError("cannot read edge list " + cfg.edges_path);
        auto g = gpas::ising::Graph::from_edge_list(in);
        graph_json = {{"source", cfg.edges_path}};
        return g;
    }
    if (!cfg.width || !cfg.height)
        throw UsageError("tpa-ising requires --width and --height, or --edges");
    graph_json = {{"width", *cfg.width}, {"height", *cfg.height}};
    return gpas::ising::Graph::lattice(*cfg.width, *cfg.height);
}

int cmd_tpa_ising(const RunConfig& cfg) {
    require_json(cfg, "tpa-ising");
    ordered_json graph_json;
    const auto graph = load_graph(cfg, graph_json);
    if (graph.vertex_count() > gpas::ising::kMaxEnumerationVertices)
        throw UsageError("graph has " + std::to_string(graph.vertex_count()) +
                         " vertices; at most " +
                         std::to_string(gpas::ising::kMaxEnumerationVertices) + " are supported");
    graph_json["vertices"] = graph.vertex_count();
    graph_json["edges"] = graph.edge_count();

    const gpas::ising::IsingFamily family(gpas::ising::build_histogram(graph));
    const auto& hist = family.histogram();
    const double log_ratio = family.log_ratio();
    const double z_inner = std::ldexp(1.0, static_cast<int>(graph.vertex_count()));

    ordered_json j{{"command", "tpa-ising"},
                   {"graph", graph_json},
                   {"epsilon", cfg.epsilon},
                   {"delta", cfg.delta},
                   {"seed", cfg.seed},
                   {"replicates", cfg.replicates}};
    j["oracle"] = {{"z_inner", z_inner},
                   {"z_outer", gpas::ising::partition_function(hist, family.beta_outer())},
                   {"log_ratio", log_ratio},
                   {"ratio", std::exp(log_ratio)}};

    std::cerr << "tpa-ising: " << cfg.replicates << " replicate(s) on " << graph.vertex_count()
              << " vertices, ln ratio " << log_ratio << '\n';

    struct Run {
        gpas::TpaReport report;
        std::string diagnostic;
    };
    const auto runs = gpas::run_replicates(cfg.replicates, [&](std::size_t i) {
        Run run;
        try {
            run.report = gpas::two_phase_scheme(family, cfg.epsilon, cfg.delta, cfg.seed, i);
        } catch (const gpas::DegenerateRatio& e) {
            // r = 0: every TPA run returns 0, so the ratio is exactly 1.
            run.diagnostic = std::string("DegenerateRatio: ") + e.what();
            run.report.epsilon = cfg.epsilon;
            run.report.delta = cfg.delta;
            run.report.ratio_estimate = 1.0;
            run.report.ci = {1.0, 1.0, 1.0 - cfg.delta};
            run.report.total_tpa_calls = gpas::kDefaultMaxCalls;
        }
        return run;
    });

    ordered_json rows = ordered_json::array();
    std::vector<double> calls;
    double within = 0.0;
    const double true_ratio = std::exp(log_ratio);
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& r = runs[i].report;
        const bool ok = std::fabs(r.ratio_estimate / true_ratio - 1.0) <= cfg.epsilon;
        within += ok ? 1.0 : 0.0;
        calls.push_back(static_cast<double>(r.total_tpa_calls));
        ordered_json row{{"replicate", i},
                         {"ratio_estimate", r.ratio_estimate},
                         {"z_outer_estimate", r.ratio_estimate * z_inner},
                         {"ci", to_json(r.ci)},
                         {"total_tpa_calls", r.total_tpa_calls},
                         {"within_epsilon", ok}};
        if (runs[i].diagnostic.empty()) {
            row["r_hat1"] = r.r_hat1;
            row["r_hat2"] = r.r_hat2;
            row["epsilon2"] = r.epsilon2;
            row["k1"] = r.phase1.k;
            row["k2"] = r.phase2.k;
            row["diagnostic"] = nullptr;
        } else {
            row["diagnostic"] = runs[i].diagnostic;
        }
        rows.push_back(row);
    }
    const auto calls_stats = mean_sd(calls);
    j["runs"] = rows;
    j["summary"] = {{"mean_total_tpa_calls", calls_stats["mean"]},
                    {"sd_total_tpa_calls", calls_stats["sd"]},
                    {"fraction_within_epsilon", within / static_cast<double>(runs.size())}};
    emit(cfg, j);
    return kExitOk;
}

int cmd_bench(const RunConfig& cfg) {
    if (!cfg.mu) throw UsageError("bench requires --mu (the synthetic ln-ratio)");
    if (cfg.format != "json" && cfg.format != "csv")
        throw UsageError("--format must be json or csv");
    const double mu = *cfg.mu;
    std::cerr << "bench: " << cfg.replicates << " replicates at mu=" << mu << '\n';

    struct Calls {
        double gpas = 0.0;
        double chernoff = 0.0;
    };
    const auto runs = gpas::run_replicates(cfg.replicates, [&](std::size_t i) {
        Calls c;
        {
            gpas::SyntheticPoissonSource source(mu, gpas::replicate_stream(cfg.seed, i, 0));
            gpas::RngStream aux = gpas::replicate_stream(cfg.seed, i, 1);
            c.gpas = static_cast<double>(
                gpas::two_phase_scheme(source, cfg.epsilon, cfg.delta, aux).total_tpa_calls);
        }
        {
            gpas::SyntheticPoissonSource source(mu, gpas::replicate_stream(cfg.seed, i, 2));
            gpas::RngStream aux = gpas::replicate_stream(cfg.seed, i, 3);
            c.chernoff = static_cast<double>(
                gpas::chernoff_baseline(source, cfg.epsilon, cfg.delta, aux).total_calls);
        }
        return c;
    });
    std::vector<double> g, c;
    for (const auto& r : runs) {
        g.push_back(r.gpas);
        c.push_back(r.chernoff);
    }
    const auto gs = mean_sd(g);
    const auto cs = mean_sd(c);
    const std::string assumption = "synthetic Poisson source with mean mu stands in for TPA";

    if (cfg.format == "csv") {
        Output out(cfg.output_path);
        auto& os = out.stream();
        auto cell = [](const ordered_json& v) {
            if (v.is_null()) return std::string("NA");
            std::ostringstream s;
            s << std::setprecision(10) << v.get<double>();
            return s.str();
        };
        os << "epsilon,delta,mu,replicates,seed,gpas_mean_calls,gpas_sd_calls,"
              "chernoff_mean_calls,chernoff_sd_calls\n";
        os << cfg.epsilon << ',' << cfg.delta << ',' << mu << ',' << cfg.replicates << ','
           << cfg.seed << ',' << cell(gs["mean"]) << ',' << cell(gs["sd"]) << ','
           << cell(cs["mean"]) << ',' << cell(cs["sd"]) << '\n';
        return kExitOk;
    }
    ordered_json j{{"command", "bench"},         {"epsilon", cfg.epsilon},
                   {"delta", cfg.delta},         {"mu", mu},
                   {"replicates", cfg.replicates}, {"seed", cfg.seed},
                   {"assumption", assumption}};
    j["gpas"] = {{"mean_calls", gs["mean"]}, {"sd_calls", gs["sd"]}};
    j["chernoff"] = {{"mean_calls", cs["mean"]}, {"sd_calls", cs["sd"]}};
    emit(cfg, j);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gamma Poisson Approximation Scheme: Poisson-mean estimation with exact error law"};
    app.require_subcommand(1);

    RunConfig cfg;
    int (*handler)(const RunConfig&) = nullptr;

    // Raw flag values; per-command defaults are applied in each callback.
    std::optional<double> epsilon, delta;
    std::optional<std::size_t> replicates;
    std::optional<std::uint64_t> seed;

    auto common = [&](CLI::App* sub, bool random) {
        sub->add_option("--output,-o", cfg.output_path, "Write payload to this file");
        sub->add_option("--format", cfg.format, "Output format (json, or csv for bench)")
            ->check(CLI::IsMember({"json", "csv"}));
        if (random) {
            sub->add_option("--seed", seed,
                            std::string("RNG seed (default 0, or $") + kSeedEnv + ")");
            sub->add_option("--replicates", replicates, "Independent replicates")
                ->check(CLI::PositiveNumber);
        }
    };
    auto precision = [&](CLI::App* sub, bool required) {
        auto* e = sub->add_option("--epsilon", epsilon, "Relative error bound, in (0,1)");
        auto* d = sub->add_option("--delta", delta, "Failure probability, in (0,1)");
        if (required) {
            e->required();
            d->required();
        }
    };
    auto resolve = [&](double eps_default, double delta_default, std::size_t reps_default) {
        cfg.epsilon = epsilon.value_or(eps_default);
        cfg.delta = delta.value_or(delta_default);
        cfg.replicates = replicates.value_or(reps_default);
        if (seed) cfg.seed = *seed;
    };

    auto* calibrate = app.add_subcommand("calibrate", "Choose k and p for an (epsilon, delta) target");
    precision(calibrate, true);
    common(calibrate, false);
    calibrate->callback([&] {
        resolve(0.0, 0.0, 1);
        handler = cmd_calibrate;
    });

    auto* estimate = app.add_subcommand("estimate", "Run GPAS on a synthetic Poisson(mu) stream");
    estimate->add_option("--mu", cfg.mu, "Mean of the synthetic source")->required();
    estimate->add_option("--k", cfg.k, "Fixed k instead of calibrating");
    precision(estimate, false);
    common(estimate, true);
    estimate->callback([&] {
        resolve(0.2, 0.1, 1);
        handler = cmd_estimate;
    });

    auto* validate = app.add_subcommand("validate", "Run the statistical property suite");
    common(validate, true);
    validate->callback([&] {
        resolve(0.0, 0.0, 1000);
        handler = cmd_validate;
    });

    auto* tpa = app.add_subcommand("tpa-ising", "Estimate Z(1)/Z(0) of an Ising model with TPA");
    tpa->add_option("--width", cfg.width);
    tpa->add_option("--height", cfg.height);
    tpa->add_option("--edges", cfg.edges_path, "Edge list file, one 'u v' pair per line");
    precision(tpa, false);
    common(tpa, true);
    tpa->callback([&] {
        resolve(0.2, 0.01, 1);
        handler = cmd_tpa_ising;
    });

    auto* bench = app.add_subcommand("bench", "Mean oracle calls of the two-phase scheme vs baseline");
    bench->add_option("--mu", cfg.mu, "Synthetic ln-ratio")->required();
    precision(bench, false);
    common(bench, true);
    bench->callback([&] {
        resolve(0.2, 0.01, 1000);
        handler = cmd_bench;
    });

    try {
        cfg.seed = default_seed();
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        return handler(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const gpas::DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const gpas::SizeExceeded& e) {
        std::cerr << "size error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const gpas::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const gpas::DegenerateRatio& e) {
        std::cerr << "degenerate ratio: " << e.what() << '\n';
        return kExitBudget;
    } catch (const gpas::IterationCap& e) {
        std::cerr << "iteration cap: " << e.what() << '\n';
        return kExitBudget;
    } catch (const gpas::SearchFailure& e) {
        std::cerr << "calibration failed: " << e.what() << '\n';
        return kExitBudget;
    }
}
