#pragma once

// Seeded Monte Carlo wealth simulation and the expectation, drift, ruin,
// maximal-inequality and decomposition results built on it.

#include <cstdint>
#include <span>
#include <vector>

#include "kelly/probability.hpp"
#include "kelly/utility.hpp"

namespace kelly {

inline constexpr std::int64_t kMaxSimulationSteps = 1'000'000'000;
inline constexpr std::int64_t kMaxStoredPathValues = 50'000'000;

struct SimConfig {
    double w0 = 1.0;
    Probability p = 0.5;
    BetFraction f = 0.0;
    std::int64_t trials = 1;
    std::int64_t paths = 1;
    std::uint64_t seed = 0;
    /// Worker threads; 0 means hardware concurrency. Never affects results.
    int threads = 1;
    /// Keep full W(0..N) and log-increment sequences for every path.
    bool keep_paths = false;
    /// Steps at which per-path wealth and running maxima are recorded.
    /// Empty selects the default set; 0 and N are always included.
    std::vector<std::int64_t> checkpoints;

    void validate() const;
    [[nodiscard]] SimConfig with_trials(std::int64_t n) const;
};

/// Default checkpoints: 20 even steps plus N/4, N/2, 3N/4, all within [0,N].
std::vector<std::int64_t> default_checkpoints(std::int64_t trials);

class TrajectoryBatch {
public:
    TrajectoryBatch(SimConfig config, std::vector<std::int64_t> checkpoints);

    [[nodiscard]] const SimConfig& config() const { return config_; }
    [[nodiscard]] std::int64_t paths() const { return config_.paths; }
    [[nodiscard]] const std::vector<std::int64_t>& checkpoints() const { return checkpoints_; }

    [[nodiscard]] double wealth_at(std::int64_t path, std::size_t checkpoint) const;
    [[nodiscard]] double running_max_at(std::int64_t path, std::size_t checkpoint) const;
    [[nodiscard]] double final_wealth(std::int64_t path) const;
    [[nodiscard]] double running_max(std::int64_t path) const;
    [[nodiscard]] std::int64_t wins(std::int64_t path) const { return wins_[idx(path)]; }
    [[nodiscard]] bool ruined(std::int64_t path) const { return final_wealth(path) == 0.0; }

    [[nodiscard]] bool has_paths() const { return config_.keep_paths; }
    /// W(0..N) for one path; requires keep_paths.
    [[nodiscard]] std::span<const double> wealth_path(std::int64_t path) const;
    /// log(1 + F Z(I)) for I = 1..N; requires keep_paths.
    [[nodiscard]] std::span<const double> log_increments(std::int64_t path) const;

private:
    friend TrajectoryBatch simulate(const SimConfig& config);
    static std::size_t idx(std::int64_t path) { return static_cast<std::size_t>(path); }
    void run_paths(std::int64_t begin, std::int64_t end);

    SimConfig config_;
    std::vector<std::int64_t> checkpoints_;
    std::vector<double> checkpoint_wealth_;
    std::vector<double> checkpoint_max_;
    std::vector<std::int64_t> wins_;
    std::vector<double> wealth_;
    std::vector<double> log_increments_;
};

/// Path k draws from Substream{seed, k}; output is independent of threads.
TrajectoryBatch simulate(const SimConfig& config);

struct WealthStats {
    double mean_final;
    double var_final;
    double vol_final;
    double mean_log_growth;
    double se_log_growth;
    std::int64_t excluded_paths;  // ruined paths, log undefined
    std::vector<double> running_max;
};

WealthStats wealth_stats(const TrajectoryBatch& batch);

/// w0 (1 + F(2p-1))^N.
double expected_wealth_linear(const SimConfig& config);

struct ProductExpectation {
    double value;
    /// The factorisation treats U and V as independent counts.
    bool assumes_independent_counts = true;
};

/// w0 (1+pF)^N (1-qF)^N.
ProductExpectation expected_wealth_product(const SimConfig& config);

/// w0 exp(N F (p-q)). Throws ApproximationDomainError for F > 0.1.
double expected_wealth_exponential(const SimConfig& config);

/// sum_a pmf(a) w0 (1+F)^a (1-F)^(N-a), the exact expectation.
double expected_wealth_enumerated(const SimConfig& config);

/// E[W(I+1) | W(I)] / W(I) = 1 + F(2p-1).
double conditional_growth_factor(Probability p, BetFraction f);

struct LogDrift {
    double empirical_drift;
    double se;
    double theory;
    double z_score;
    std::int64_t excluded_paths;
};

/// Empirical per-trial log growth against U(F,p). Requires >= 100 paths.
LogDrift log_drift_check(const TrajectoryBatch& batch);

/// 1 - p^N for a full stake every trial.
double ruin_probability_full_stake(Probability p, std::int64_t trials);

/// min(1, E[W(N)] / lambda).
double doob_bound(const SimConfig& config, double lambda);

/// Fraction of paths whose running maximum up to N reaches lambda.
double empirical_sup_prob(const TrajectoryBatch& batch, double lambda);

/// `count` geometrically spaced levels in (w0, max observed running max].
std::vector<double> doob_lambda_grid(const TrajectoryBatch& batch, int count);

struct DoobDecomposition {
    std::vector<std::int64_t> steps;
    /// M(I) = W(I) (1+F(2p-1))^-I, row-major [path][checkpoint].
    std::vector<double> martingale_part;
    /// A(I) = w0 (1+F(2p-1))^I - w0.
    std::vector<double> drift;
    std::vector<double> mean_martingale;
    std::vector<double> se_martingale;
    /// Mean over paths of |W(I) - (M(I) + A(I))|; nonzero in general.
    std::vector<double> mean_pathwise_gap;
};

/// Requires p > 1/2 and F not in the decay regime.
DoobDecomposition doob_decompose(const TrajectoryBatch& batch);

struct CheckpointStats {
    std::int64_t step;
    double mean_w;
    double var_w;
    double mean_m;
    double se_m;
    double empirical_sup_prob;
    double doob_bound;
    double expected_linear;
    double expected_product;
};

/// Per-checkpoint summary; sup probability and bound use level lambda.
std::vector<CheckpointStats> checkpoint_table(const TrajectoryBatch& batch, double lambda);

}  // namespace kelly
