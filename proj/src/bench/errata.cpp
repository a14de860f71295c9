#include "kelly/bench/errata.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "kelly/bench/csv.hpp"
#include "kelly/bernoulli.hpp"
#include "kelly/entropy.hpp"
#include "kelly/martingale.hpp"
#include "kelly/risk.hpp"
#include "kelly/utility.hpp"

namespace kelly::bench {
namespace {

const Probability kP52 = Probability::parse("0.52");

ClaimResult compare(double published, double oracle, double tol, std::string note = {}) {
    const double gap = relative_gap(published, oracle);
    return {published, oracle, gap, gap <= tol ? Verdict::Match : Verdict::Mismatch, std::move(note)};
}

ClaimResult holds(double published, double oracle, bool ok, std::string note = {}) {
    return {published, oracle, relative_gap(published, oracle), ok ? Verdict::Match : Verdict::Mismatch,
            std::move(note)};
}

std::string sanitize(std::string text) {
    std::replace(text.begin(), text.end(), ',', ';');
    std::replace(text.begin(), text.end(), '\n', ' ');
    return text;
}

SimConfig mc(double p, double f, std::int64_t trials, const VerifyContext& ctx, std::uint64_t salt) {
    SimConfig c;
    c.w0 = 1.0;
    c.p = p;
    c.f = f;
    c.trials = trials;
    c.paths = ctx.mc_paths;
    c.seed = ctx.seed ^ (salt * 0x9E3779B97F4A7C15ULL);
    return c;
}

double enumerated_variance(const BinomialSpec& spec) {
    const auto n = static_cast<double>(spec.trials);
    const double mean = n * spec.p.value();
    double var = 0.0;
    for (std::int64_t a = 0; a <= spec.trials; ++a) {
        const double d = static_cast<double>(a) - mean;
        var += pmf(spec, a) * d * d;
    }
    return var;
}

std::vector<Claim> build_registry() {
    using E = Expectation;
    std::vector<Claim> r;

    r.push_back({"pmf-normalization", "binomial series normalization", E::Match, [](const VerifyContext&) {
                     return compare(1.0, pmf_normalization({1000, kP52}), 1e-12, "N=1000 p=0.52");
                 }});
    r.push_back({"binomial-variance", "binomial moments lemma", E::Match, [](const VerifyContext&) {
                     const BinomialSpec spec(20, kP52);
                     return compare(moments(spec).variance, enumerated_variance(spec), 1e-12, "N=20 p=0.52");
                 }});
    r.push_back({"covariance-uv", "zero covariance lemma", E::DocumentedMismatch, [](const VerifyContext&) {
                     return compare(0.0, covariance_uv(10, kP52, CovarianceModel::Complementary), 1e-12,
                                    "V = N - U gives Cov = -Np(1-p)");
                 }});
    r.push_back({"net-wins-variance", "net-win variance lemma", E::DocumentedMismatch, [](const VerifyContext&) {
                     return compare(net_wins_variance(10, kP52, CovarianceModel::PaperIndependent),
                                    net_wins_variance(10, kP52, CovarianceModel::Complementary), 1e-12,
                                    "complementary counts give 4Np(1-p)");
                 }});
    r.push_back({"trial-frequency", "i.i.d. Markov trial probabilities", E::Match, [](const VerifyContext& ctx) {
                     const std::int64_t n = 100'000;
                     const auto seq = sample_outcomes(make_game(kP52), n, {ctx.seed, 0xF00D});
                     const auto wins = std::count(seq.outcomes.begin(), seq.outcomes.end(), 1);
                     const double freq = static_cast<double>(wins) / static_cast<double>(n);
                     const double band = 4.0 * std::sqrt(0.52 * 0.48 / static_cast<double>(n));
                     return holds(transition_prob(make_game(kP52), 0, 1), freq, std::abs(freq - 0.52) <= band,
                                  "4-sigma band over 1e5 draws");
                 }});
    r.push_back({"binomial-mgf", "binomial MGF lemma", E::Match, [](const VerifyContext&) {
                     const BinomialSpec spec(8, kP52);
                     return compare(mgf(spec, 0.3), mgf_bruteforce(spec, 0.3), 1e-12, "N=8 xi=0.3");
                 }});
    r.push_back({"mgf-stake-substitution", "MGF at xi = log(1+F)", E::Match, [](const VerifyContext&) {
                     const BinomialSpec spec(20, kP52);
                     return compare(std::pow(1.0 + 0.52 * 0.04, 20), mgf_bruteforce(spec, std::log1p(0.04)), 1e-12,
                                    "N=20 F=0.04");
                 }});
    r.push_back({"mgf-loss-substitution", "MGF of V at xi = log(1-F)", E::Match, [](const VerifyContext&) {
                     const BinomialSpec spec(20, kP52.complement());
                     return compare(std::pow(1.0 - 0.48 * 0.04, 20), mgf_bruteforce(spec, std::log1p(-0.04)), 1e-12,
                                    "N=20 F=0.04");
                 }});
    r.push_back({"entropy-maximum", "binary entropy maximum", E::Match, [](const VerifyContext&) {
                     double best = 0.0;
                     for (int i = 1; i < 1000; ++i) best = std::max(best, shannon(i / 1000.0).h);
                     return compare(std::numbers::ln2, best, 1e-15, "grid step 1e-3");
                 }});
    r.push_back({"binomial-entropy-three-sum", "binomial entropy lemma (loss term with N - alpha)", E::Match,
                 [](const VerifyContext&) {
                     const auto t = binomial_entropy_terms({12, kP52});
                     return compare(t.three_sum, t.direct, 1e-10, "N=12 p=0.52");
                 }});
    r.push_back({"binomial-entropy-printed", "binomial entropy lemma (loss term as printed)", E::DocumentedMismatch,
                 [](const VerifyContext&) {
                     const BinomialSpec spec(12, kP52);
                     const auto t = binomial_entropy_terms(spec);
                     double printed = 0.0;
                     for (std::int64_t a = 0; a <= 12; ++a) {
                         const double prob = pmf(spec, a);
                         const auto x = static_cast<double>(a);
                         const double log_choose = std::lgamma(13.0) - std::lgamma(x + 1.0) - std::lgamma(13.0 - x);
                         printed -= prob * (log_choose + x * std::log(0.52) + x * std::log(0.48));
                     }
                     return compare(printed, t.direct, 1e-10, "third sum weights log(1-p) by alpha");
                 }});
    r.push_back({"deterministic-entropy", "deterministic-game entropy corollary", E::Match, [](const VerifyContext&) {
                     return compare(0.0, binomial_entropy({10, 1.0}).h, 1e-15, "p=1");
                 }});
    r.push_back({"deterministic-entropy-printed", "deterministic-game entropy corollary (trailing '= beta')",
                 E::DocumentedMismatch, [](const VerifyContext&) {
                     return ClaimResult{std::nan(""), binomial_entropy({10, 1.0}).h, std::nan(""),
                                        Verdict::NotApplicable, "printed value is the symbol beta"};
                 }});
    r.push_back({"utility-entropy-identity", "utility-entropy identity lemma", E::Match, [](const VerifyContext&) {
                     double worst = 0.0;
                     for (int i = 1; i <= 1000; ++i) {
                         worst = std::max(worst, utility_entropy_identity(0.5 + 0.5 * i / 1001.0).gap);
                     }
                     return holds(0.0, worst, worst < 1e-12, "max gap over 1000 p in (0.5;1)");
                 }});
    r.push_back({"kelly-critical-point", "Kelly maximisation theorem", E::Match, [](const VerifyContext&) {
                     const double d = utility_derivatives(kelly_fraction(kP52), kP52).first;
                     return holds(0.0, d, std::abs(d) <= 1e-12, "U'(F_K) at p=0.52");
                 }});
    r.push_back({"utility-concavity", "second-derivative test", E::Match, [](const VerifyContext&) {
                     double worst = -INFINITY;
                     for (int i = 1; i < 100; ++i) {
                         for (int j = 0; j < 1000; ++j) {
                             worst = std::max(worst, utility_derivatives(j / 1000.0, i / 100.0).second);
                         }
                     }
                     return holds(0.0, worst, worst < 0.0, "max U'' over grid");
                 }});
    r.push_back({"kelly-fraction-example", "worked example F_K = 0.04", E::Match, [](const VerifyContext&) {
                     const double fk = kelly_fraction(kP52);
                     return holds(0.04, fk, fk == 0.04, "exact equality");
                 }});
    r.push_back({"series-epsilon", "small-F break-even series example", E::Match, [](const VerifyContext&) {
                     return compare(0.0001714, f_star_approx(kP52).epsilon, 1e-3, "F_K=0.04");
                 }});
    r.push_back({"series-correction-sign", "small-F break-even approximation", E::DocumentedMismatch,
                 [](const VerifyContext&) {
                     const double actual = f_star(kP52) - 2.0 * kelly_fraction(kP52);
                     return compare(f_star_approx(kP52).epsilon, actual, 0.1,
                                    "root minus 2F_K is negative; series drops the -F^4/4 term");
                 }});
    r.push_back({"partition-sign-structure", "unit-interval partition proposition", E::Match, [](const VerifyContext&) {
                     int violations = 0;
                     for (double p : {0.52, 0.6}) {
                         const double root = f_star(p);
                         const int n = 10'000;
                         const double h = 1.0 / n;
                         for (int i = 1; i < n; ++i) {
                             const double f = i * h;
                             const double u = utility(f, p);
                             if (f < root - h && !(u > 0.0)) ++violations;
                             if (f > root + h && !(u < 0.0)) ++violations;
                         }
                     }
                     return holds(0.0, violations, violations == 0, "grid violations");
                 }});
    r.push_back({"utility-dominance", "dominance in p lemma", E::Match, [](const VerifyContext& ctx) {
                     std::mt19937_64 gen(ctx.seed);
                     auto uniform = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
                     double worst = INFINITY;
                     for (int i = 0; i < 10'000; ++i) {
                         const double f = 1e-3 + 0.998 * uniform();
                         const double p_hat = 0.5 + 1e-3 + 0.49 * uniform();
                         const double p = p_hat + 1e-4 + (0.999 - p_hat - 1e-4) * uniform();
                         worst = std::min(worst, utility_dominance(f, p, p_hat));
                     }
                     return holds(0.0, worst, worst > 0.0, "min over 1e4 random triples");
                 }});
    r.push_back({"figure-peak-caption", "utility curve caption (p = 0.60)", E::DocumentedMismatch,
                 [](const VerifyContext&) {
                     const auto curve = utility_curve(0.6, 10'001);
                     const auto best = std::max_element(curve.begin(), curve.end(),
                                                        [](auto a, auto b) { return a.u < b.u; });
                     return holds(0.4, best->f, std::abs(best->f - 0.4) <= 1e-4, "argmax on 1e4-step grid");
                 }});
    r.push_back({"expected-wealth-linear", "expectation lemma (linear form)", E::Match, [](const VerifyContext&) {
                     double worst = 0.0;
                     for (double p : {0.51, 0.52, 0.6}) {
                         for (double f : {0.02, 0.04, 0.2}) {
                             for (std::int64_t n = 1; n <= 20; ++n) {
                                 const SimConfig c{.w0 = 1.0, .p = p, .f = f, .trials = n};
                                 worst = std::max(worst, relative_gap(expected_wealth_enumerated(c),
                                                                      expected_wealth_linear(c)));
                             }
                         }
                     }
                     const SimConfig c{.w0 = 1.0, .p = 0.52, .f = 0.04, .trials = 20};
                     return ClaimResult{expected_wealth_linear(c), expected_wealth_enumerated(c), worst,
                                        worst <= 1e-10 ? Verdict::Match : Verdict::Mismatch,
                                        "max gap over p x F x N<=20"};
                 }});
    r.push_back({"expected-wealth-product", "expectation lemma (product form)", E::DocumentedMismatch,
                 [](const VerifyContext&) {
                     const SimConfig c{.w0 = 1.0, .p = 0.52, .f = 0.04, .trials = 20};
                     return compare(expected_wealth_product(c).value, expected_wealth_enumerated(c), 1e-10,
                                    "factorisation assumes independent U and V");
                 }});
    r.push_back({"pqf2-example", "product/linear gap example", E::Match, [](const VerifyContext&) {
                     return compare(0.00009996, 0.51 * 0.49 * 0.02 * 0.02, 1e-12, "p=0.51 F=0.02");
                 }});
    r.push_back({"kelly-polynomial-linear", "Kelly-point maximal bound (linear base)", E::Match,
                 [](const VerifyContext&) {
                     const double p = 0.52;
                     const SimConfig c{.w0 = 1.0, .p = kP52, .f = kelly_fraction(kP52), .trials = 100};
                     return compare(std::pow(4 * p * p - 4 * p + 2, 100), expected_wealth_linear(c), 1e-12, "N=100");
                 }});
    r.push_back({"kelly-polynomial-product", "Kelly-point maximal bound (product base)", E::Match,
                 [](const VerifyContext&) {
                     const double p = 0.52;
                     const double base = 4 * std::pow(p, 4) - 8 * std::pow(p, 3) + 9 * p * p - 5 * p + 2;
                     const SimConfig c{.w0 = 1.0, .p = kP52, .f = kelly_fraction(kP52), .trials = 100};
                     return compare(std::pow(base, 100), expected_wealth_product(c).value, 1e-12, "N=100");
                 }});
    r.push_back({"exponential-growth", "exponential growth lemma", E::Match, [](const VerifyContext&) {
                     const SimConfig c{.w0 = 1.0, .p = kP52, .f = 0.04, .trials = 100};
                     return compare(expected_wealth_exponential(c), expected_wealth_linear(c), 1e-2,
                                    "1% band at N=100");
                 }});
    r.push_back({"regime-wealth-level", "regime theorem (wealth is a supermartingale beyond F*)",
                 E::DocumentedMismatch, [](const VerifyContext&) {
                     const double g = conditional_growth_factor(kP52, 0.2);
                     return holds(1.0, g, g <= 1.0, "E[W(I+1)|W(I)]/W(I) at F=0.2 > F*");
                 }});
    r.push_back({"log-drift-trichotomy", "regime theorem (log-wealth drift)", E::Match, [](const VerifyContext& ctx) {
                     const double fk = kelly_fraction(kP52);
                     const double fs = f_star(kP52);
                     double worst_z = 0.0;
                     bool signs = true;
                     double drift_k = 0.0;
                     for (double f : {fk, fs, 0.2}) {
                         const auto d = log_drift_check(simulate(mc(0.52, f, 1000, ctx, 1)));
                         worst_z = std::max(worst_z, std::abs(d.z_score));
                         if (f == fk) {
                             drift_k = d.empirical_drift;
                             signs = signs && d.empirical_drift - 3 * d.se > 0.0;
                         } else if (f == 0.2) {
                             signs = signs && d.empirical_drift + 3 * d.se < 0.0;
                         }
                     }
                     return holds(utility(fk, kP52), drift_k, signs && worst_z <= 3.0,
                                  "max |z| = " + format_number(worst_z));
                 }});
    r.push_back({"full-stake-ruin", "full-stake ruin probability", E::Match, [](const VerifyContext& ctx) {
                     const auto batch = simulate(mc(0.52, 1.0, 50, ctx, 2));
                     std::int64_t ruined = 0;
                     for (std::int64_t k = 0; k < batch.paths(); ++k) ruined += batch.ruined(k) ? 1 : 0;
                     const double freq = static_cast<double>(ruined) / static_cast<double>(batch.paths());
                     const double theory = ruin_probability_full_stake(kP52, 50);
                     const double se = std::sqrt(theory * (1 - theory) / static_cast<double>(batch.paths()));
                     return holds(theory, freq, std::abs(freq - theory) <= 3 * se, "3 binomial se");
                 }});
    r.push_back({"deterministic-doubling", "p = 1 doubling remark", E::Match, [](const VerifyContext& ctx) {
                     auto c = mc(1.0, 1.0, 50, ctx, 3);
                     c.paths = 10;
                     const auto batch = simulate(c);
                     return compare(std::ldexp(1.0, 50), batch.final_wealth(0), 0.0, "exact");
                 }});
    r.push_back({"doob-maximal-inequality", "Doob maximal inequality lemma", E::Match, [](const VerifyContext& ctx) {
                     const auto c = mc(0.52, 0.04, 200, ctx, 4);
                     const auto batch = simulate(c);
                     bool ok = true;
                     double first_bound = 0.0;
                     double first_emp = 0.0;
                     for (double lambda : doob_lambda_grid(batch, 20)) {
                         const double emp = empirical_sup_prob(batch, lambda);
                         const double bound = doob_bound(c, lambda);
                         if (first_bound == 0.0) {
                             first_bound = bound;
                             first_emp = emp;
                         }
                         ok = ok && emp <= bound;
                     }
                     return holds(first_bound, first_emp, ok, "20 levels above w0; zero tolerance");
                 }});
    r.push_back({"doob-no-blowup", "no finite-N blowup corollary", E::Match, [](const VerifyContext&) {
                     const SimConfig c{.w0 = 1.0, .p = kP52, .f = 0.04, .trials = 1000};
                     const double b = doob_bound(c, 1e300);
                     return holds(0.0, b, b <= 1e-290, "bound at lambda = 1e300");
                 }});
    r.push_back({"doob-martingale-flatness", "Doob decomposition proposition", E::Match, [](const VerifyContext& ctx) {
                     const auto batch = simulate(mc(0.52, 0.04, 100, ctx, 5));
                     const auto d = doob_decompose(batch);
                     bool ok = true;
                     for (std::size_t j = 0; j < d.steps.size(); ++j) {
                         const auto s = d.steps[j];
                         if (s == 25 || s == 50 || s == 75 || s == 100) {
                             ok = ok && std::abs(d.mean_martingale[j] - 1.0) <= 3 * d.se_martingale[j];
                         }
                     }
                     return holds(1.0, d.mean_martingale.back(), ok, "3 se at N/4 N/2 3N/4 N");
                 }});
    r.push_back({"doob-one-step-ratio", "martingale one-step ratio", E::Match, [](const VerifyContext&) {
                     const double p = 0.52;
                     const double f = 0.04;
                     const double ratio = (p * (1 + f) + (1 - p) * (1 - f)) / conditional_growth_factor(p, f);
                     return compare(1.0, ratio, 1e-15, "closed form");
                 }});
    r.push_back({"doob-pathwise-identity", "decomposition W = M + A (pathwise)", E::DocumentedMismatch,
                 [](const VerifyContext& ctx) {
                     auto c = mc(0.52, 0.04, 100, ctx, 6);
                     c.paths = std::min<std::int64_t>(c.paths, 10'000);
                     const auto d = doob_decompose(simulate(c));
                     return holds(0.0, d.mean_pathwise_gap.back(), d.mean_pathwise_gap.back() <= 1e-9,
                                  "mean |W - (M + A)| at N");
                 }});
    r.push_back({"wealth-expansion-order2", "wealth expansion lemma (second order as printed)",
                 E::DocumentedMismatch, [](const VerifyContext&) {
                     const TrialCounts counts{12, 8};
                     const auto err = [&](double f) {
                         return std::abs(wealth_approx_published_order2(1.0, f, counts) - wealth_exact(1.0, f, counts));
                     };
                     return compare(8.0, err(0.02) / err(0.01), 0.1, "error ratio when halving F (U=12 V=8)");
                 }});
    r.push_back({"wealth-expansion-order1", "wealth expansion lemma (first order)", E::Match, [](const VerifyContext&) {
                     const TrialCounts counts{12, 8};
                     const double exact = wealth_exact(1000.0, 0.04, counts);
                     const double rel = relative_gap(exact, wealth_approx(1000.0, 0.04, counts, 1));
                     return holds(0.04 * 0.04 * 400, rel, rel < 0.04 * 0.04 * 400, "relative error < F^2 N^2");
                 }});
    r.push_back({"variance-estimate", "variance estimate proposition", E::DocumentedMismatch,
                 [](const VerifyContext&) {
                     const auto v = variance_report(1000.0, 100, kP52, 0.04);
                     return compare(v.paper_estimate, *v.oracle_exact, 1e-2,
                                    "ratio oracle/estimate = " + format_number(*v.ratio));
                 }});
    r.push_back({"variance-oracle-mc", "exact variance vs Monte Carlo", E::Match, [](const VerifyContext& ctx) {
                     auto c = mc(0.52, 0.04, 100, ctx, 7);
                     c.w0 = 1000.0;
                     const auto batch = simulate(c);
                     std::vector<double> finals(static_cast<std::size_t>(batch.paths()));
                     for (std::int64_t k = 0; k < batch.paths(); ++k) finals[static_cast<std::size_t>(k)] = batch.final_wealth(k);
                     const auto sv = sample_variance(finals);
                     const double oracle = *variance_report(1000.0, 100, kP52, 0.04).oracle_exact;
                     return holds(oracle, sv.variance, std::abs(sv.variance - oracle) <= 5 * sv.se, "5 se");
                 }});
    r.push_back({"variance-statement-vs-proof", "variance statement (no F^2) vs its proof", E::DocumentedMismatch,
                 [](const VerifyContext&) {
                     const auto v = variance_report(1000.0, 100, kP52, 0.04);
                     return compare(v.paper_linear, v.paper_estimate, 1e-12, "differs by F^2");
                 }});
    r.push_back({"fractional-stake-example", "fractional Kelly worked example (p = 0.52)", E::Match,
                 [](const VerifyContext&) {
                     const double ff = fractional_plan(kP52, Probability::parse("2/3")).f_frac;
                     return holds(2.0 / 75.0, ff, ff == 2.0 / 75.0, "exact equality");
                 }});
    r.push_back({"fractional-tradeoff", "fractional Kelly proposition", E::Match, [](const VerifyContext&) {
                     bool ok = true;
                     for (int i = 1; i <= 10; ++i) {
                         const double p = 0.5 + 0.01 * i;
                         for (double f : {0.5, 2.0 / 3.0, 0.75, 0.9, 0.99}) {
                             const auto plan = fractional_plan(p, f);
                             ok = ok && plan.growth_frac < plan.growth_full && plan.vol_frac < plan.vol_full;
                         }
                     }
                     const auto plan = fractional_plan(kP52, Probability::parse("2/3"));
                     return holds(plan.growth_full, plan.growth_frac, ok, "strict on p x f grid");
                 }});
    r.push_back({"fractional-example-q", "fractional Kelly example (q for p = 0.515)", E::DocumentedMismatch,
                 [](const VerifyContext&) {
                     return compare(0.475, Probability::parse("0.515").complement().value(), 1e-12, "q = 1 - p");
                 }});
    r.push_back({"fractional-example-fk", "fractional Kelly example (F_K for p = 0.515)", E::Match,
                 [](const VerifyContext&) {
                     return compare(0.03, kelly_fraction(Probability::parse("0.515")), 1e-15, "");
                 }});
    return r;
}

}  // namespace

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Match: return "match";
        case Verdict::Mismatch: return "mismatch";
        case Verdict::NotApplicable: return "not-applicable";
    }
    return "unknown";
}

const char* to_string(Expectation expectation) {
    return expectation == Expectation::Match ? "match" : "documented-mismatch";
}

double relative_gap(double published, double oracle) {
    const double diff = std::abs(published - oracle);
    return published == 0.0 ? diff : diff / std::abs(published);
}

const std::vector<Claim>& claim_registry() {
    static const std::vector<Claim> registry = build_registry();
    return registry;
}

bool ErrataReport::has_regression() const {
    return std::any_of(entries.begin(), entries.end(), [](const auto& e) { return e.regression(); });
}

std::string ErrataReport::to_csv() const {
    std::string out = "claim_id,location,published_value,oracle_value,relative_gap,verdict,expected,note\n";
    for (const auto& e : entries) {
        out += e.id + ',' + sanitize(e.location) + ',' + format_number(e.result.published_value) + ',' +
               format_number(e.result.oracle_value) + ',' + format_number(e.result.relative_gap) + ',' +
               to_string(e.result.verdict) + ',' + to_string(e.expected) + ',' + sanitize(e.result.note) + '\n';
    }
    return out;
}

ErrataReport run_verification(std::uint64_t seed, VerifyScale scale) {
    const VerifyContext ctx{seed, scale, scale == VerifyScale::Full ? 100'000 : 20'000};
    ErrataReport report;
    for (const auto& claim : claim_registry()) {
        ClaimResult result;
        try {
            result = claim.check(ctx);
        } catch (const std::exception& e) {
            result = {std::nan(""), std::nan(""), std::nan(""), Verdict::Mismatch,
                      std::string("exception: ") + e.what()};
        }
        report.entries.push_back({claim.id, claim.location, claim.expected, std::move(result)});
    }
    return report;
}

}  // namespace kelly::bench
