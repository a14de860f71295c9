#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "kelly/bench/errata.hpp"
#include "kelly/bench/run_config.hpp"

namespace kelly::bench {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRegression = 1;
inline constexpr int kExitUsage = 2;

struct CommandOutput {
    std::vector<std::filesystem::path> files;
    std::vector<std::string> notes;
};

/// utility_curve.csv, partition.csv (omitted without an edge), entropy.csv.
CommandOutput cmd_analyze(const RunConfig& config);

/// trajectories_summary.csv, doob.csv, drift.csv.
CommandOutput cmd_simulate(const RunConfig& config);

/// tradeoff.csv and tradeoff_series.csv (expectation/volatility vs N).
CommandOutput cmd_tradeoff(const RunConfig& config);

struct VerifyOutput {
    CommandOutput output;
    ErrataReport report;
    int exit_code;
};

/// errata_report.csv; exit code 1 iff a claim expected to match does not.
VerifyOutput cmd_verify(const RunConfig& config);

/// Full command-line entry point. Returns the process exit code.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace kelly::bench
