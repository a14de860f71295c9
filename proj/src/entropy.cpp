#include "kelly/entropy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kelly/errors.hpp"
#include "kelly/utility.hpp"

namespace kelly {
namespace {

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

double to_base(double nats, LogBase base) {
    return base == LogBase::Base2 ? nats / std::numbers::ln2 : nats;
}

}  // namespace

EntropyReport shannon(Probability p, LogBase base) {
    const double pv = p.value();
    const double h = -xlogx(pv) - xlogx(1.0 - pv);
    return {to_base(h, base), base, EntropySource::SingleTrial};
}

double shannon_argmax() { return 0.5; }

double shannon_derivative(double p) { return std::log((1.0 - p) / p); }

BinomialEntropyTerms binomial_entropy_terms(const BinomialSpec& spec) {
    if (spec.trials + 1 > kEnumerationGuard) {
        throw RangeError("binomial_entropy: N=" + std::to_string(spec.trials) +
                         " exceeds the enumeration guard");
    }
    const double p = spec.p.value();
    const double q = 1.0 - p;
    const auto n = static_cast<double>(spec.trials);
    double direct = 0.0;
    double binom_term = 0.0;
    double win_term = 0.0;
    double loss_term = 0.0;
    for (std::int64_t a = 0; a <= spec.trials; ++a) {
        const double prob = pmf(spec, a);
        if (prob == 0.0) continue;
        const auto x = static_cast<double>(a);
        direct -= prob * std::log(prob);
        const double log_choose = std::lgamma(n + 1.0) - std::lgamma(x + 1.0) - std::lgamma(n - x + 1.0);
        binom_term -= prob * log_choose;
        if (a > 0) win_term -= prob * x * std::log(p);
        if (a < spec.trials) loss_term -= prob * (n - x) * std::log(q);
    }
    return {direct, binom_term + win_term + loss_term};
}

EntropyReport binomial_entropy(const BinomialSpec& spec, EntropySource source, LogBase base) {
    const BinomialSpec counted =
        source == EntropySource::BinomialLosses ? BinomialSpec(spec.trials, spec.p.complement()) : spec;
    const auto terms = binomial_entropy_terms(counted);
    if (std::abs(terms.direct - terms.three_sum) > 1e-10) {
        throw std::logic_error("binomial entropy routes disagree: " + std::to_string(terms.direct) +
                               " vs " + std::to_string(terms.three_sum));
    }
    return {to_base(std::max(0.0, terms.direct), base), base,
            source == EntropySource::SingleTrial ? EntropySource::BinomialWins : source};
}

EntropyIdentity utility_entropy_identity(Probability p) {
    const double lhs = utility(kelly_fraction(p), p);
    const double rhs = std::numbers::ln2 - shannon(p).h;
    return {lhs, rhs, std::abs(lhs - rhs)};
}

}  // namespace kelly
