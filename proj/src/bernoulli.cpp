#include "kelly/bernoulli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "kelly/errors.hpp"

namespace kelly {
namespace {

// Error of Stirling's approximation: log(n!) - log(sqrt(2 pi n) (n/e)^n).
double stirling_error(double n) {
    constexpr double s0 = 1.0 / 12.0;
    constexpr double s1 = 1.0 / 360.0;
    constexpr double s2 = 1.0 / 1260.0;
    constexpr double s3 = 1.0 / 1680.0;
    constexpr double s4 = 1.0 / 1188.0;
    if (n <= 15.0) {
        return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n -
               0.5 * std::log(2.0 * std::numbers::pi);
    }
    const double nn = n * n;
    if (n > 500) return (s0 - s1 / nn) / n;
    if (n > 80) return (s0 - (s1 - s2 / nn) / nn) / n;
    if (n > 35) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
    return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// Deviance term x log(x/np) + np - x, evaluated without cancellation.
double deviance(double x, double np) {
    if (std::abs(x - np) < 0.1 * (x + np)) {
        double v = (x - np) / (x + np);
        double s = (x - np) * v;
        double ej = 2.0 * x * v;
        v *= v;
        for (int j = 1; j < 1000; ++j) {
            ej *= v;
            const double next = s + ej / (2 * j + 1);
            if (next == s) return next;
            s = next;
        }
        return s;
    }
    return x * std::log(x / np) + np - x;
}

void check_spec_count(const BinomialSpec& spec, std::int64_t wins) {
    if (wins < 0 || wins > spec.trials) {
        throw DomainError("win count " + std::to_string(wins) + " outside [0," +
                          std::to_string(spec.trials) + "]");
    }
}

void check_enumerable(std::int64_t trials, const char* what) {
    if (trials + 1 > kEnumerationGuard) {
        throw RangeError(std::string(what) + ": N=" + std::to_string(trials) +
                         " exceeds the enumeration guard");
    }
}

}  // namespace

double GameParams::edge() const {
    if (const auto& exact = p_.exact()) {
        return (Rational{2, 1} * *exact - Rational{1, 1}).to_double();
    }
    return p_.value() - q();
}

GameParams make_game(Probability p) { return GameParams(p); }

BinomialSpec::BinomialSpec(std::int64_t trials, Probability p) : trials(trials), p(p) {
    if (trials < 1) throw DomainError("trial count must be >= 1, got " + std::to_string(trials));
}

double log_pmf(const BinomialSpec& spec, std::int64_t wins) {
    check_spec_count(spec, wins);
    const double p = spec.p.value();
    const double q = 1.0 - p;
    const auto n = static_cast<double>(spec.trials);
    const auto x = static_cast<double>(wins);
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    if (p == 0.0) return wins == 0 ? 0.0 : kNegInf;
    if (q == 0.0) return wins == spec.trials ? 0.0 : kNegInf;
    if (wins == 0) return p < 0.1 ? -deviance(n, n * q) - n * p : n * std::log(q);
    if (wins == spec.trials) return q < 0.1 ? -deviance(n, n * p) - n * q : n * std::log(p);
    const double lc = stirling_error(n) - stirling_error(x) - stirling_error(n - x) -
                      deviance(x, n * p) - deviance(n - x, n * q);
    const double lf = std::log(2.0 * std::numbers::pi) + std::log(x) + std::log1p(-x / n);
    return lc - 0.5 * lf;
}

double pmf(const BinomialSpec& spec, std::int64_t wins) {
    if (spec.trials == 1) {
        check_spec_count(spec, wins);
        return wins == 1 ? spec.p.value() : 1.0 - spec.p.value();
    }
    return std::exp(log_pmf(spec, wins));
}

double pmf_normalization(const BinomialSpec& spec) {
    check_enumerable(spec.trials, "pmf_normalization");
    double total = 0.0;
    for (std::int64_t a = 0; a <= spec.trials; ++a) total += pmf(spec, a);
    return total;
}

Moments moments(const BinomialSpec& spec) {
    const double p = spec.p.value();
    const auto n = static_cast<double>(spec.trials);
    const double variance = n * p * (1.0 - p);
    return {n * p, variance, std::sqrt(variance)};
}

double covariance_uv(std::int64_t trials, Probability p, CovarianceModel model) {
    const BinomialSpec spec(trials, p);
    if (model == CovarianceModel::PaperIndependent) return 0.0;
    check_enumerable(trials, "covariance_uv");
    const auto n = static_cast<double>(trials);
    double mean_u = 0.0;
    double mean_v = 0.0;
    double mean_uv = 0.0;
    for (std::int64_t a = 0; a <= trials; ++a) {
        const double w = pmf(spec, a);
        const auto u = static_cast<double>(a);
        mean_u += w * u;
        mean_v += w * (n - u);
        mean_uv += w * u * (n - u);
    }
    return mean_uv - mean_u * mean_v;
}

double net_wins_variance(std::int64_t trials, Probability p, CovarianceModel model) {
    const BinomialSpec spec(trials, p);
    const auto n = static_cast<double>(trials);
    if (model == CovarianceModel::PaperIndependent) return 2.0 * n * p * (1.0 - p);
    check_enumerable(trials, "net_wins_variance");
    double mean = 0.0;
    double second = 0.0;
    for (std::int64_t a = 0; a <= trials; ++a) {
        const double w = pmf(spec, a);
        const double net = 2.0 * static_cast<double>(a) - n;
        mean += w * net;
        second += w * net * net;
    }
    return std::max(0.0, second - mean * mean);
}

double transition_prob(const GameParams& game, std::int64_t from_wins, std::int64_t to_wins) {
    if (from_wins < 0) throw DomainError("negative win count " + std::to_string(from_wins));
    if (to_wins == from_wins + 1) return game.p().value();
    if (to_wins == from_wins) return game.q();
    throw DomainError("impossible one-step transition " + std::to_string(from_wins) + " -> " +
                      std::to_string(to_wins));
}

double log_mgf(const BinomialSpec& spec, double xi) {
    if (!std::isfinite(xi)) throw DomainError("mgf argument must be finite");
    return static_cast<double>(spec.trials) * std::log1p(spec.p.value() * std::expm1(xi));
}

double mgf(const BinomialSpec& spec, double xi) {
    const double base = 1.0 + spec.p.value() * std::expm1(xi);
    if (!std::isfinite(xi)) throw DomainError("mgf argument must be finite");
    const double value = std::pow(base, static_cast<double>(spec.trials));
    if (!std::isfinite(value)) {
        throw RangeError("mgf overflows at N=" + std::to_string(spec.trials) +
                         ", xi=" + std::to_string(xi) + "; use log_mgf");
    }
    return value;
}

double mgf_bruteforce(const BinomialSpec& spec, double xi) {
    check_enumerable(spec.trials, "mgf_bruteforce");
    double total = 0.0;
    for (std::int64_t a = 0; a <= spec.trials; ++a) {
        total += std::exp(xi * static_cast<double>(a)) * pmf(spec, a);
    }
    if (!std::isfinite(total)) throw RangeError("mgf_bruteforce overflow");
    return total;
}

OutcomeSequence sample_outcomes(const GameParams& game, std::int64_t trials, Substream stream) {
    if (trials < 1) throw DomainError("trial count must be >= 1, got " + std::to_string(trials));
    OutcomeSequence seq{std::vector<int>(static_cast<std::size_t>(trials)), stream};
    TrialSource source(stream, game.p().value());
    for (auto& z : seq.outcomes) z = source.next();
    return seq;
}

}  // namespace kelly
