#include "kelly/risk.hpp"

#include <cmath>
#include <string>

#include "kelly/errors.hpp"
#include "kelly/martingale.hpp"
#include "kelly/utility.hpp"

namespace kelly {
namespace {

void check_counts(TrialCounts counts) {
    if (counts.wins < 0 || counts.losses < 0) throw DomainError("negative trial counts");
}

void check_small_stake(BetFraction f) {
    if (f.value() > 0.2) {
        throw ApproximationDomainError("wealth expansion needs F <= 0.2, got " + std::to_string(f.value()));
    }
}

double stake_for(Probability p, Probability multiplier) {
    const double fk = kelly_fraction(p);
    if (p.exact() && multiplier.exact()) {
        return ((Rational{2, 1} * *p.exact() - Rational{1, 1}) * *multiplier.exact()).to_double();
    }
    return multiplier.value() * fk;
}

double volatility_of(double w0, std::int64_t trials, Probability p, BetFraction f) {
    const auto report = volatility_report(w0, trials, p, f);
    return report.oracle ? *report.oracle : report.paper;
}

}  // namespace

double wealth_exact(double w0, BetFraction f, TrialCounts counts) {
    check_counts(counts);
    return w0 * std::pow(1.0 + f.value(), static_cast<double>(counts.wins)) *
           std::pow(1.0 - f.value(), static_cast<double>(counts.losses));
}

double wealth_approx(double w0, BetFraction f, TrialCounts counts, int order) {
    check_counts(counts);
    check_small_stake(f);
    if (order != 1 && order != 2) throw DomainError("expansion order must be 1 or 2");
    const double fv = f.value();
    const auto net = static_cast<double>(counts.net());
    double value = 1.0 + fv * net;
    if (order == 2) value += fv * fv * 0.5 * (net * net - static_cast<double>(counts.trials()));
    return w0 * value;
}

double wealth_approx_published_order2(double w0, BetFraction f, TrialCounts counts) {
    check_counts(counts);
    check_small_stake(f);
    const double fv = f.value();
    const auto u = static_cast<double>(counts.wins);
    const auto v = static_cast<double>(counts.losses);
    return w0 * (1.0 + fv * (u - v) + fv * fv * (0.5 * u * (u - 1.0) - 0.5 * v * (v - 1.0)));
}

VarianceReport variance_report(double w0, std::int64_t trials, Probability p, BetFraction f) {
    if (!(w0 > 0.0)) throw DomainError("w0 must be positive");
    const BinomialSpec spec(trials, p);
    const auto n = static_cast<double>(trials);
    const double pq = p.value() * (1.0 - p.value());
    VarianceReport report{2.0 * w0 * w0 * n * pq * f.value() * f.value(), 2.0 * w0 * w0 * n * pq,
                          std::nullopt, std::nullopt};
    if (trials > kVarianceOracleGuard) return report;
    if (f.value() == 0.0 || p.value() == 0.0 || p.value() == 1.0) {
        report.oracle_exact = 0.0;  // wealth is deterministic
        if (report.paper_estimate > 0.0) report.ratio = 0.0;
        return report;
    }

    const SimConfig config{.w0 = w0, .p = p, .f = f, .trials = trials};
    const double mean = expected_wealth_enumerated(config);
    double var = 0.0;
    for (std::int64_t a = 0; a <= trials; ++a) {
        const double prob = pmf(spec, a);
        if (prob == 0.0) continue;
        const double d = wealth_exact(w0, f, {a, trials - a}) - mean;
        var += prob * d * d;
    }
    report.oracle_exact = var;
    if (report.paper_estimate > 0.0) report.ratio = var / report.paper_estimate;
    return report;
}

VolatilityReport volatility_report(double w0, std::int64_t trials, Probability p, BetFraction f) {
    const auto v = variance_report(w0, trials, p, f);
    VolatilityReport out{std::sqrt(v.paper_estimate), std::sqrt(v.paper_linear), std::nullopt};
    if (v.oracle_exact) out.oracle = std::sqrt(*v.oracle_exact);
    return out;
}

SampleVariance sample_variance(std::span<const double> values) {
    const auto n = static_cast<double>(values.size());
    if (values.size() < 2) throw DomainError("sample variance needs at least 2 values");
    double sum = 0.0;
    for (double x : values) sum += x;
    const double mean = sum / n;
    double m2 = 0.0;
    double m4 = 0.0;
    for (double x : values) {
        const double d2 = (x - mean) * (x - mean);
        m2 += d2;
        m4 += d2 * d2;
    }
    const double variance = m2 / (n - 1.0);
    const double central2 = m2 / n;
    const double central4 = m4 / n;
    return {variance, std::sqrt(std::max(0.0, central4 - central2 * central2) / n)};
}

FractionalKellyPlan fractional_plan(Probability p, Probability multiplier, PlanHorizon horizon) {
    if (!(multiplier.value() >= 0.5 && multiplier.value() < 1.0)) {
        throw DomainError("fractional Kelly multiplier must lie in [1/2,1), got " +
                          std::to_string(multiplier.value()));
    }
    if (!(p.value() > 0.5)) throw NoEdgeError("fractional Kelly needs p > 1/2");
    const double fk = kelly_fraction(p);
    const double ff = stake_for(p, multiplier);
    return {multiplier.value(),
            fk,
            ff,
            utility(fk, p),
            utility(ff, p),
            volatility_of(horizon.w0, horizon.trials, p, fk),
            volatility_of(horizon.w0, horizon.trials, p, ff)};
}

std::vector<TradeoffRow> tradeoff_table(Probability p, std::span<const Probability> multipliers,
                                        std::int64_t trials, double w0) {
    std::vector<TradeoffRow> rows;
    rows.reserve(multipliers.size());
    for (const auto& m : multipliers) {
        if (m.value() < 0.5) {
            throw DomainError("multiplier must lie in [1/2,1], got " + std::to_string(m.value()));
        }
        const double f = stake_for(p, m);
        const SimConfig config{.w0 = w0, .p = p, .f = f, .trials = trials};
        rows.push_back({m.value(), f, expected_wealth_linear(config), volatility_of(w0, trials, p, f),
                        utility(f, p)});
    }
    return rows;
}

}  // namespace kelly
