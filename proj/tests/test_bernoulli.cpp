#include <doctest.h>

#include <cmath>
#include <vector>

#include "kelly/bernoulli.hpp"
#include "kelly/errors.hpp"
#include "oracles.hpp"

using namespace kelly;
using kelly::testing::exact_pmf;
using kelly::testing::for_each_sequence;

TEST_CASE("make_game derives q and the edge") {
    const auto game = make_game(Probability::parse("0.52"));
    CHECK(game.edge() == 0.04);
    CHECK(game.p().value() + game.q() == 1.0);
    CHECK(make_game(0.5).edge() == 0.0);
    CHECK_THROWS_AS(make_game(1.2), DomainError);
}

TEST_CASE("pmf single trial is exact") {
    for (double p : {0.0, 0.1, 0.52, 0.999, 1.0}) {
        const BinomialSpec spec(1, p);
        CHECK(pmf(spec, 1) == p);
        CHECK(pmf(spec, 0) == 1.0 - p);
        CHECK(pmf_normalization(spec) == 1.0);
    }
}

TEST_CASE("pmf against exact rational arithmetic at N=20") {
    const BinomialSpec spec(20, Probability::parse("0.52"));
    for (int a = 0; a <= 20; ++a) {
        const double oracle = exact_pmf(20, a, 13, 25).convert_to<double>();
        CHECK(pmf(spec, a) == doctest::Approx(oracle).epsilon(1e-13));
    }
    // Frozen from the rational oracle.
    CHECK(pmf(spec, 10) == doctest::Approx(0.1733981107079648).epsilon(1e-13));
}

TEST_CASE("pmf against exact rationals on a wider grid") {
    for (int n : {5, 33, 64}) {
        for (auto [num, den] : {std::pair{1, 100}, {13, 25}, {99, 100}, {1, 2}}) {
            const BinomialSpec spec(n, Rational{num, den});
            for (int a = 0; a <= n; ++a) {
                const double oracle = exact_pmf(n, a, num, den).convert_to<double>();
                if (oracle < 1e-300) continue;
                CHECK(pmf(spec, a) == doctest::Approx(oracle).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("pmf rejects impossible counts") {
    const BinomialSpec spec(5, 0.5);
    CHECK_THROWS_AS(pmf(spec, 6), DomainError);
    CHECK_THROWS_AS(pmf(spec, -1), DomainError);
    CHECK_THROWS_AS(BinomialSpec(0, 0.5), DomainError);
}

TEST_CASE("pmf at the degenerate probabilities") {
    CHECK(pmf(BinomialSpec(7, 1.0), 7) == 1.0);
    CHECK(pmf(BinomialSpec(7, 1.0), 6) == 0.0);
    CHECK(pmf(BinomialSpec(7, 0.0), 0) == 1.0);
    CHECK(pmf(BinomialSpec(7, 0.0), 1) == 0.0);
}

TEST_CASE("normalization examples") {
    CHECK(std::abs(pmf_normalization(BinomialSpec(5, 0.52)) - 1.0) < 1e-12);
    CHECK(std::abs(pmf_normalization(BinomialSpec(50, 0.99)) - 1.0) < 1e-12);
}

TEST_CASE("property: normalization for N up to 1e4 on a p grid") {
    for (std::int64_t n : {1, 2, 7, 20, 99, 500, 2500, 10000}) {
        for (int k = 1; k <= 99; ++k) {
            const double total = pmf_normalization(BinomialSpec(n, k / 100.0));
            CHECK_MESSAGE(std::abs(total - 1.0) < 1e-12, "N=" << n << " p=" << k / 100.0);
        }
    }
}

TEST_CASE("log_pmf is consistent with pmf") {
    const BinomialSpec spec(300, 0.52);
    for (int a : {0, 1, 150, 156, 299, 300}) CHECK(std::exp(log_pmf(spec, a)) == doctest::Approx(pmf(spec, a)).epsilon(1e-13));
    CHECK(std::isfinite(log_pmf(BinomialSpec(1'000'000, 0.52), 0)));
}

TEST_CASE("moments match 2^N enumeration") {
    for (int n : {1, 5, 10, 16}) {
        for (double p : {0.5, 0.52, 0.9}) {
            double mean = 0.0;
            double second = 0.0;
            for_each_sequence(n, p, [&](double prob, int wins) {
                mean += prob * wins;
                second += prob * wins * wins;
            });
            const auto m = moments(BinomialSpec(n, p));
            CHECK(m.mean == doctest::Approx(mean).epsilon(1e-12));
            CHECK(m.variance == doctest::Approx(second - mean * mean).epsilon(1e-11));
            CHECK(m.volatility == std::sqrt(m.variance));
        }
    }
    const auto ten = moments(BinomialSpec(10, 0.5));
    CHECK(ten.mean == 5.0);
    CHECK(ten.variance == 2.5);
    CHECK(moments(BinomialSpec(9, 1.0)).variance == 0.0);
    const auto one = moments(BinomialSpec(1, 0.3));
    CHECK(one.mean == 0.3);
    CHECK(one.variance == doctest::Approx(0.21));
}

TEST_CASE("covariance models") {
    CHECK(covariance_uv(10, 0.52, CovarianceModel::PaperIndependent) == 0.0);
    CHECK(covariance_uv(1, 0.5, CovarianceModel::Complementary) == doctest::Approx(-0.25));
    for (int n : {1, 10}) {
        const double p = n == 1 ? 0.5 : 0.52;
        double eu = 0.0;
        double ev = 0.0;
        double euv = 0.0;
        for_each_sequence(n, p, [&](double prob, int wins) {
            eu += prob * wins;
            ev += prob * (n - wins);
            euv += prob * wins * (n - wins);
        });
        CHECK(covariance_uv(n, p, CovarianceModel::Complementary) == doctest::Approx(euv - eu * ev).epsilon(1e-12));
    }
}

TEST_CASE("net wins variance models") {
    CHECK(net_wins_variance(10, 0.5, CovarianceModel::PaperIndependent) == 5.0);
    CHECK(net_wins_variance(10, 1.0, CovarianceModel::PaperIndependent) == 0.0);
    CHECK(net_wins_variance(10, 1.0, CovarianceModel::Complementary) == doctest::Approx(0.0));
    double mean = 0.0;
    double second = 0.0;
    for_each_sequence(10, 0.5, [&](double prob, int wins) {
        const int net = 2 * wins - 10;
        mean += prob * net;
        second += prob * net * net;
    });
    CHECK(net_wins_variance(10, 0.5, CovarianceModel::Complementary) == doctest::Approx(second - mean * mean));
    CHECK(net_wins_variance(10, 0.5, CovarianceModel::Complementary) == doctest::Approx(10.0));
}

TEST_CASE("transition probabilities") {
    const auto game = make_game(0.52);
    CHECK(transition_prob(game, 3, 4) == 0.52);
    CHECK(transition_prob(game, 3, 3) == game.q());
    CHECK_THROWS_AS(transition_prob(game, 3, 5), DomainError);
    CHECK_THROWS_AS(transition_prob(game, 3, 2), DomainError);
}

TEST_CASE("mgf examples") {
    const BinomialSpec spec(8, 0.52);
    CHECK(mgf(spec, 0.0) == 1.0);
    CHECK(std::abs(mgf_bruteforce(spec, 0.0) - 1.0) < 1e-12);
    CHECK(mgf(spec, 0.3) == doctest::Approx(mgf_bruteforce(spec, 0.3)).epsilon(1e-12));
    const BinomialSpec one(1, 0.3);
    CHECK(mgf_bruteforce(one, 0.7) == doctest::Approx(0.7 + 0.3 * std::exp(0.7)).epsilon(1e-15));
    CHECK_THROWS_AS(mgf(BinomialSpec(100000, 0.52), 50.0), RangeError);
    CHECK(log_mgf(BinomialSpec(100000, 0.52), 50.0) > 700.0);
}

TEST_CASE("property: mgf agrees with direct summation for N <= 64") {
    for (int n : {1, 2, 3, 8, 17, 32, 64}) {
        for (double p : {0.01, 0.3, 0.52, 0.97}) {
            for (int k = -20; k <= 20; ++k) {
                const double xi = k / 10.0;
                const BinomialSpec spec(n, p);
                CHECK(mgf(spec, xi) == doctest::Approx(mgf_bruteforce(spec, xi)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("property: mgf at log(1+F) and log(1-F)") {
    for (int n : {1, 20, 100}) {
        for (int k = 0; k <= 90; k += 5) {
            const double f = k / 100.0;
            const double p = 0.52;
            const double q = 1.0 - p;
            CHECK(mgf(BinomialSpec(n, p), std::log1p(f)) == doctest::Approx(std::pow(1 + p * f, n)).epsilon(1e-12));
            CHECK(mgf(BinomialSpec(n, q), std::log1p(-f)) == doctest::Approx(std::pow(1 - q * f, n)).epsilon(1e-12));
        }
    }
}

TEST_CASE("sample_outcomes") {
    const auto ones = sample_outcomes(make_game(1.0), 100, {1, 2});
    for (int z : ones.outcomes) CHECK(z == 1);
    const auto minus = sample_outcomes(make_game(0.0), 100, {1, 2});
    for (int z : minus.outcomes) CHECK(z == -1);

    const std::int64_t n = 100000;
    const auto draws = sample_outcomes(make_game(0.52), n, {42, 0});
    CHECK(draws.outcomes.size() == static_cast<std::size_t>(n));
    CHECK(draws.stream == Substream{42, 0});
    double wins = 0.0;
    for (int z : draws.outcomes) {
        CHECK((z == 1 || z == -1));
        wins += (z + 1) / 2;
    }
    CHECK(std::abs(wins / n - 0.52) < 4.0 * std::sqrt(0.52 * 0.48 / n));
}

TEST_CASE("property: sampling is reproducible per substream") {
    const auto game = make_game(0.52);
    for (std::uint64_t seed : {0ull, 1ull, 0xDEADBEEFull}) {
        for (std::uint64_t index : {0ull, 7ull, 99999ull}) {
            const auto a = sample_outcomes(game, 500, {seed, index});
            const auto b = sample_outcomes(game, 500, {seed, index});
            CHECK(a.outcomes == b.outcomes);
        }
    }
    CHECK(sample_outcomes(game, 500, {1, 0}).outcomes != sample_outcomes(game, 500, {1, 1}).outcomes);
    CHECK(sample_outcomes(game, 500, {1, 0}).outcomes != sample_outcomes(game, 500, {2, 0}).outcomes);
}
