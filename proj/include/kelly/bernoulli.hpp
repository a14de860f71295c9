#pragma once

// Binomial game primitives: parameters, PMF, moments, covariance models,
// one-step transitions, moment-generating functions and outcome sampling.

#include <cstdint>
#include <vector>

#include "kelly/probability.hpp"
#include "kelly/random.hpp"

namespace kelly {

/// Largest number of terms any direct summation oracle will evaluate.
inline constexpr std::int64_t kEnumerationGuard = 1'000'000;

/// The biased binary game. q is always derived as 1-p.
class GameParams {
public:
    explicit GameParams(Probability p) : p_(p) {}

    [[nodiscard]] const Probability& p() const { return p_; }
    [[nodiscard]] double q() const { return 1.0 - p_.value(); }
    /// p - q. Exact (single rounding) when p carries a rational.
    [[nodiscard]] double edge() const;

private:
    Probability p_;
};

GameParams make_game(Probability p);

struct BinomialSpec {
    std::int64_t trials;
    Probability p;

    BinomialSpec(std::int64_t trials, Probability p);
};

/// U wins and V losses out of N trials.
struct TrialCounts {
    std::int64_t wins = 0;
    std::int64_t losses = 0;

    [[nodiscard]] std::int64_t trials() const { return wins + losses; }
    [[nodiscard]] std::int64_t net() const { return wins - losses; }
};

struct OutcomeSequence {
    std::vector<int> outcomes;  // each -1 or +1
    Substream stream;
};

/// How the loss count V relates to the win count U.
enum class CovarianceModel {
    PaperIndependent,  // U and V treated as independent binomials
    Complementary,     // V = N - U
};

struct Moments {
    double mean;
    double variance;
    double volatility;
};

double pmf(const BinomialSpec& spec, std::int64_t wins);
double log_pmf(const BinomialSpec& spec, std::int64_t wins);
/// Sum of pmf over 0..N.
double pmf_normalization(const BinomialSpec& spec);
Moments moments(const BinomialSpec& spec);

double covariance_uv(std::int64_t trials, Probability p, CovarianceModel model);
double net_wins_variance(std::int64_t trials, Probability p, CovarianceModel model);

/// One-step Markov transition of the win count.
double transition_prob(const GameParams& game, std::int64_t from_wins, std::int64_t to_wins);

/// (1 - p + p e^xi)^N. Throws RangeError when the result overflows.
double mgf(const BinomialSpec& spec, double xi);
double log_mgf(const BinomialSpec& spec, double xi);
/// Direct sum of e^(xi a) pmf(a); the oracle for mgf.
double mgf_bruteforce(const BinomialSpec& spec, double xi);

OutcomeSequence sample_outcomes(const GameParams& game, std::int64_t trials, Substream stream);

}  // namespace kelly
