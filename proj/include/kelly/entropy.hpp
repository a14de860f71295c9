#pragma once

#include "kelly/bernoulli.hpp"

namespace kelly {

enum class LogBase { Natural, Base2 };
enum class EntropySource { SingleTrial, BinomialWins, BinomialLosses };

struct EntropyReport {
    double h;  // >= 0, in nats unless base is Base2
    LogBase base;
    EntropySource source;
};

/// -p log p - (1-p) log(1-p), with 0 log 0 := 0.
EntropyReport shannon(Probability p, LogBase base = LogBase::Natural);

/// Maximiser of the single-trial entropy (1/2).
double shannon_argmax();

/// d/dp of the single-trial entropy, log((1-p)/p).
double shannon_derivative(double p);

struct BinomialEntropyTerms {
    double direct;     // -sum P log P
    double three_sum;  // log C(N,a), a log p and (N-a) log(1-p) sums
};

/// Both evaluation routes of the binomial entropy.
BinomialEntropyTerms binomial_entropy_terms(const BinomialSpec& spec);

/// Entropy of U ~ Bin(N,p) (or of V ~ Bin(N,q) for BinomialLosses).
/// Returns the direct sum; throws std::logic_error if the two routes
/// disagree by more than 1e-10.
EntropyReport binomial_entropy(const BinomialSpec& spec,
                               EntropySource source = EntropySource::BinomialWins,
                               LogBase base = LogBase::Natural);

struct EntropyIdentity {
    double lhs;  // utility at the Kelly point
    double rhs;  // log 2 - H(p)
    double gap;
};

/// Checks U(F_K, p) = log 2 - H(p) for p in [1/2, 1].
EntropyIdentity utility_entropy_identity(Probability p);

}  // namespace kelly
