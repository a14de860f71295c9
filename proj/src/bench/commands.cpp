#include "kelly/bench/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>

#include "kelly/bench/csv.hpp"
#include "kelly/entropy.hpp"
#include "kelly/errors.hpp"
#include "kelly/martingale.hpp"
#include "kelly/risk.hpp"
#include "kelly/utility.hpp"

namespace kelly::bench {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Probability require_p(const RunConfig& config, const char* command) {
    if (!config.p) throw UsageError(std::string(command) + " requires --p");
    return *config.p;
}

int resolve_threads(const RunConfig& config) {
    if (config.threads) return *config.threads;
    if (const char* env = std::getenv("KELLY_BENCH_THREADS"); env && *env) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            throw UsageError("KELLY_BENCH_THREADS must be an integer");
        }
    }
    return 1;
}

std::filesystem::path emit(const CsvTable& table, const std::filesystem::path& dir, const char* name,
                           CommandOutput& output) {
    auto file = dir / name;
    table.write(file);
    output.files.push_back(file);
    return file;
}

}  // namespace

CommandOutput cmd_analyze(const RunConfig& config) {
    const Probability p = require_p(config, "analyze");
    if (!(p.value() > 0.0 && p.value() < 1.0)) throw UsageError("analyze needs p in (0,1)");
    const int grid = config.grid.value_or(1001);
    const auto dir = config.output_dir();
    CommandOutput output;

    CsvTable curve({"F", "U"});
    for (const auto& point : utility_curve(p, grid)) curve.row({point.f, point.u});
    emit(curve, dir, "utility_curve.csv", output);

    if (p.value() > 0.5) {
        const double fk = kelly_fraction(p);
        const double root = f_star(p, config.root_tol.value_or(kDefaultRootTol));
        double approx = kNaN;
        double epsilon = kNaN;
        try {
            const auto series = f_star_approx(p);
            approx = series.approx;
            epsilon = series.epsilon;
        } catch (const ApproximationDomainError& e) {
            output.notes.emplace_back(e.what());
        }
        CsvTable partition({"p", "F_K", "F_star", "f_star_approx", "epsilon"});
        partition.row({p.value(), fk, root, approx, epsilon});
        emit(partition, dir, "partition.csv", output);
    } else {
        output.notes.emplace_back("no edge at p=" + format_number(p.value()) + ": partition omitted");
    }

    CsvTable entropy({"p", "H", "log2_minus_H", "U_at_F_K"});
    const double h = shannon(p).h;
    const double u_kelly = p.value() >= 0.5 ? utility(kelly_fraction(p), p) : kNaN;
    entropy.row({p.value(), h, std::numbers::ln2 - h, u_kelly});
    emit(entropy, dir, "entropy.csv", output);
    return output;
}

CommandOutput cmd_simulate(const RunConfig& config) {
    const Probability p = require_p(config, "simulate");
    const StakeMode stake = config.stake.value_or(StakeMode{});
    SimConfig sim;
    sim.p = p;
    sim.f = stake.stake(p);
    sim.trials = config.trials.value_or(1000);
    sim.paths = config.paths.value_or(10'000);
    sim.w0 = config.w0.value_or(1000.0);
    sim.seed = config.seed.value_or(0);
    sim.threads = resolve_threads(config);
    const double lambda = config.lambda.value_or(1.5 * sim.w0);
    const auto batch = simulate(sim);
    const auto dir = config.output_dir();
    CommandOutput output;

    CsvTable summary({"I", "mean_W", "var_W", "mean_M", "empirical_sup_prob", "doob_bound", "expected_linear",
                      "expected_product"});
    for (const auto& row : checkpoint_table(batch, lambda)) {
        summary.row({static_cast<double>(row.step), row.mean_w, row.var_w, row.mean_m, row.empirical_sup_prob,
                     row.doob_bound, row.expected_linear, row.expected_product});
    }
    emit(summary, dir, "trajectories_summary.csv", output);

    CsvTable doob({"lambda", "empirical_sup_prob", "doob_bound"});
    for (double level : doob_lambda_grid(batch, 20)) {
        doob.row({level, empirical_sup_prob(batch, level), doob_bound(sim, level)});
    }
    emit(doob, dir, "doob.csv", output);

    const auto stats = wealth_stats(batch);
    const auto label = classify(sim.f, p, config.zero_tol.value_or(kDefaultZeroTol));
    const double z = stats.se_log_growth > 0.0 ? (stats.mean_log_growth - label.utility_value) / stats.se_log_growth
                                               : kNaN;
    CsvTable drift({"p", "F", "regime", "empirical_drift", "se", "theory", "z_score", "excluded_paths"});
    drift.raw_row({format_number(p.value()), format_number(sim.f.value()), to_string(label.regime),
                   format_number(stats.mean_log_growth), format_number(stats.se_log_growth),
                   format_number(label.utility_value), format_number(z), std::to_string(stats.excluded_paths)});
    emit(drift, dir, "drift.csv", output);
    return output;
}

CommandOutput cmd_tradeoff(const RunConfig& config) {
    const Probability p = config.p.value_or(Probability::parse("0.52"));
    const auto multipliers = config.multipliers.value_or(parse_multiplier_list("2/3,1"));
    const std::int64_t trials = config.trials.value_or(1000);
    const double w0 = config.w0.value_or(1000.0);
    if (trials < 1) throw UsageError("tradeoff needs n >= 1");
    const auto dir = config.output_dir();
    CommandOutput output;

    CsvTable table({"f", "F", "expected_wealth", "volatility", "utility"});
    for (const auto& row : tradeoff_table(p, multipliers, trials, w0)) {
        table.row({row.multiplier, row.f, row.expected_wealth, row.volatility, row.utility});
    }
    emit(table, dir, "tradeoff.csv", output);

    CsvTable series({"N", "f", "F", "expected_wealth", "volatility"});
    const std::int64_t steps = std::min<std::int64_t>(trials, 20);
    for (std::int64_t i = 1; i <= steps; ++i) {
        const std::int64_t n = i * trials / steps;
        for (const auto& row : tradeoff_table(p, multipliers, n, w0)) {
            series.row({static_cast<double>(n), row.multiplier, row.f, row.expected_wealth, row.volatility});
        }
    }
    emit(series, dir, "tradeoff_series.csv", output);
    return output;
}

VerifyOutput cmd_verify(const RunConfig& config) {
    auto report = run_verification(config.seed.value_or(0), config.scale.value_or(VerifyScale::Quick));
    CommandOutput output;
    const auto file = config.output_dir() / "errata_report.csv";
    std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << report.to_csv();
    if (!out) throw std::runtime_error("cannot write " + file.string());
    output.files.push_back(file);
    const int code = report.has_regression() ? kExitRegression : kExitOk;
    return {std::move(output), std::move(report), code};
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kelly criterion analysis and Monte Carlo bench"};
    app.require_subcommand(1);

    RunConfig overrides;
    std::string config_file;
    auto bind = [&overrides](CLI::App* cmd, const std::string& flag, const char* key, const std::string& help) {
        return cmd->add_option_function<std::string>(
            flag, [&overrides, key](const std::string& v) { overrides.set(key, v); }, help);
    };
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_file, "flat key = value settings file");
        bind(cmd, "--out", "out", "output directory (default $KELLY_BENCH_OUT or .)");
    };

    auto* analyze = app.add_subcommand("analyze", "utility curve, regime partition and entropy tables");
    add_common(analyze);
    bind(analyze, "--p", "p", "win probability");
    bind(analyze, "--grid", "grid", "utility curve grid points");
    bind(analyze, "--root-tol", "root_tol", "break-even root tolerance");

    auto* sim = app.add_subcommand("simulate", "seeded Monte Carlo wealth trajectories");
    add_common(sim);
    bind(sim, "--p", "p", "win probability");
    auto* kelly_flag = sim->add_flag_callback("--kelly", [&] { overrides.set("stake", "kelly"); }, "stake F_K");
    auto* fraction = sim->add_option_function<std::string>(
        "--fraction", [&](const std::string& v) { overrides.set("stake", "fractional:" + v); },
        "stake f * F_K, f in [1/2,1)");
    auto* stake = sim->add_option_function<std::string>(
        "--stake", [&](const std::string& v) { overrides.set("stake", "explicit:" + v); }, "explicit stake F");
    kelly_flag->excludes(fraction)->excludes(stake);
    fraction->excludes(stake);
    bind(sim, "--n", "n", "trials per path");
    bind(sim, "--paths", "paths", "number of paths");
    bind(sim, "--w0", "w0", "initial wealth");
    bind(sim, "--seed", "seed", "master seed");
    bind(sim, "--lambda", "lambda", "level for the per-checkpoint sup probability");
    bind(sim, "--threads", "threads", "worker threads (0 = all cores)");
    bind(sim, "--zero-tol", "zero_tol", "regime classification tolerance");

    auto* trade = app.add_subcommand("tradeoff", "fractional Kelly growth/volatility table");
    add_common(trade);
    bind(trade, "--p", "p", "win probability (default 0.52)");
    bind(trade, "--f", "f", "comma-separated Kelly multipliers (default 2/3,1)");
    bind(trade, "--n", "n", "trials (default 1000)");
    bind(trade, "--w0", "w0", "initial wealth (default 1000)");

    auto* verify = app.add_subcommand("verify", "run the oracle suite and write the errata report");
    add_common(verify);
    verify->add_flag_callback("--quick", [&] { overrides.set("scale", "quick"); }, "reduced Monte Carlo sizes");
    verify->add_flag_callback("--full", [&] { overrides.set("scale", "full"); }, "full Monte Carlo sizes");
    bind(verify, "--seed", "seed", "master seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        RunConfig config = config_file.empty() ? RunConfig{} : RunConfig::load(config_file);
        config.merge(overrides);
        auto report_files = [&out](const CommandOutput& o) {
            for (const auto& n : o.notes) out << "note: " << n << '\n';
            for (const auto& f : o.files) out << "wrote " << f.string() << '\n';
        };
        if (analyze->parsed()) {
            report_files(cmd_analyze(config));
        } else if (sim->parsed()) {
            report_files(cmd_simulate(config));
        } else if (trade->parsed()) {
            report_files(cmd_tradeoff(config));
        } else {
            const auto result = cmd_verify(config);
            for (const auto& e : result.report.entries) {
                out << std::left << std::setw(32) << e.id << std::setw(16) << to_string(e.result.verdict)
                    << std::setw(22) << to_string(e.expected) << (e.regression() ? "REGRESSION " : "")
                    << e.result.note << '\n';
            }
            report_files(result.output);
            return result.exit_code;
        }
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SizeError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace kelly::bench
