#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kelly/probability.hpp"

namespace kelly::bench {

/// Thrown for malformed configuration or command-line input (exit code 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// How the stake fraction is chosen for a simulation.
struct StakeMode {
    enum class Kind { Kelly, Fractional, Explicit };
    Kind kind = Kind::Kelly;
    std::optional<Rational> value;  // multiplier for Fractional, F for Explicit

    /// "kelly", "fractional:2/3" or "explicit:0.2".
    static StakeMode parse(std::string_view text);
    [[nodiscard]] double stake(const Probability& p) const;
};

enum class VerifyScale { Quick, Full };

/// Flat key = value settings shared by all commands. Unset fields fall back
/// to per-command defaults.
struct RunConfig {
    std::optional<Probability> p;
    std::optional<StakeMode> stake;
    std::optional<std::int64_t> trials;
    std::optional<std::int64_t> paths;
    std::optional<double> w0;
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> out;
    std::optional<double> lambda;
    std::optional<int> threads;
    std::optional<int> grid;
    std::optional<std::vector<Probability>> multipliers;
    std::optional<VerifyScale> scale;
    std::optional<double> zero_tol;
    std::optional<double> root_tol;

    /// Applies one "key = value" setting. Unknown keys throw UsageError.
    void set(std::string_view key, std::string_view value);
    /// Fields set in `overrides` replace those here.
    void merge(const RunConfig& overrides);

    /// Parses the flat config format; '#' starts a comment.
    static RunConfig parse(std::string_view text);
    static RunConfig load(const std::filesystem::path& file);

    /// --out, else $KELLY_BENCH_OUT, else the current directory.
    [[nodiscard]] std::filesystem::path output_dir() const;
};

std::vector<Probability> parse_multiplier_list(std::string_view text);

}  // namespace kelly::bench
