#pragma once

// Linearised wealth, variance/volatility estimates with exact oracles,
// and the fractional-Kelly growth/volatility trade-off.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kelly/bernoulli.hpp"
#include "kelly/probability.hpp"

namespace kelly {

/// Largest N for which the exact variance oracle is evaluated.
inline constexpr std::int64_t kVarianceOracleGuard = 10'000;

/// w0 (1+F)^U (1-F)^V.
double wealth_exact(double w0, BetFraction f, TrialCounts counts);

/// Small-F expansion of wealth in the counts. order 1: w0 (1 + F(U-V)).
/// order 2 adds F^2 ((U-V)^2 - (U+V)) / 2, the full second-order term.
/// Throws ApproximationDomainError for F > 0.2.
double wealth_approx(double w0, BetFraction f, TrialCounts counts, int order);

/// The second-order form w0 (1 + F(U-V) + F^2 (U(U-1)/2 - V(V-1)/2)) as
/// published; it drops the -UV F^2 cross term, so its error is O(F^2).
double wealth_approx_published_order2(double w0, BetFraction f, TrialCounts counts);

struct VarianceReport {
    double paper_estimate;  // 2 w0^2 N p(1-p) F^2
    double paper_linear;    // 2 w0^2 N p(1-p)
    std::optional<double> oracle_exact;
    std::optional<double> ratio;  // oracle / paper_estimate
};

VarianceReport variance_report(double w0, std::int64_t trials, Probability p, BetFraction f);

struct VolatilityReport {
    double paper;
    double paper_linear;
    std::optional<double> oracle;
};

VolatilityReport volatility_report(double w0, std::int64_t trials, Probability p, BetFraction f);

struct SampleVariance {
    double variance;
    double se;
};

/// Unbiased sample variance with a fourth-moment standard error.
SampleVariance sample_variance(std::span<const double> values);

struct PlanHorizon {
    std::int64_t trials = 1000;
    double w0 = 1000.0;
};

struct FractionalKellyPlan {
    double multiplier;
    double f_kelly;
    double f_frac;
    double growth_full;
    double growth_frac;
    double vol_full;
    double vol_frac;
};

/// Stake multiplier * F_K with multiplier in [1/2, 1). Exact rational
/// inputs give a single rounding of the product.
FractionalKellyPlan fractional_plan(Probability p, Probability multiplier, PlanHorizon horizon = {});

struct TradeoffRow {
    double multiplier;
    double f;
    double expected_wealth;
    double volatility;
    double utility;
};

/// One row per multiplier in [1/2, 1]; 1 is the full-Kelly row.
std::vector<TradeoffRow> tradeoff_table(Probability p, std::span<const Probability> multipliers,
                                        std::int64_t trials, double w0);

}  // namespace kelly
