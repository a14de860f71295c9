#include "kelly/martingale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <thread>

#include "kelly/bernoulli.hpp"
#include "kelly/errors.hpp"
#include "kelly/random.hpp"

namespace kelly {
namespace {

struct MeanSe {
    double mean;
    double var;
    double se;
};

template <typename Fn>
MeanSe mean_se(std::int64_t n, Fn&& value_of) {
    double sum = 0.0;
    for (std::int64_t k = 0; k < n; ++k) sum += value_of(k);
    const double mean = sum / static_cast<double>(n);
    double dev = 0.0;
    for (std::int64_t k = 0; k < n; ++k) {
        const double d = value_of(k) - mean;
        dev += d * d;
    }
    const double var = n > 1 ? dev / static_cast<double>(n - 1) : 0.0;
    return {mean, var, std::sqrt(var / static_cast<double>(n))};
}

}  // namespace

void SimConfig::validate() const {
    if (!(w0 > 0.0) || !std::isfinite(w0)) throw DomainError("w0 must be positive, got " + std::to_string(w0));
    if (trials < 1) throw DomainError("trials must be >= 1, got " + std::to_string(trials));
    if (paths < 1) throw DomainError("paths must be >= 1, got " + std::to_string(paths));
    if (threads < 0) throw DomainError("threads must be >= 0");
    if (paths > kMaxSimulationSteps / trials) {
        throw SizeError("simulation of " + std::to_string(paths) + " x " + std::to_string(trials) +
                        " steps exceeds the 1e9 step guard");
    }
    if (keep_paths && paths > kMaxStoredPathValues / (trials + 1)) {
        throw SizeError("keep_paths would store more than 5e7 values; use summary mode");
    }
    for (auto c : checkpoints) {
        if (c < 0 || c > trials) throw DomainError("checkpoint " + std::to_string(c) + " outside [0,N]");
    }
}

SimConfig SimConfig::with_trials(std::int64_t n) const {
    SimConfig copy = *this;
    copy.trials = n;
    copy.checkpoints.clear();
    return copy;
}

std::vector<std::int64_t> default_checkpoints(std::int64_t trials) {
    std::set<std::int64_t> steps{0, trials, trials / 4, trials / 2, 3 * trials / 4};
    const std::int64_t k = std::min<std::int64_t>(trials, 20);
    for (std::int64_t i = 0; i <= k; ++i) steps.insert(i * trials / k);
    return {steps.begin(), steps.end()};
}

TrajectoryBatch::TrajectoryBatch(SimConfig config, std::vector<std::int64_t> checkpoints)
    : config_(std::move(config)), checkpoints_(std::move(checkpoints)) {
    const auto n = idx(config_.paths);
    checkpoint_wealth_.assign(n * checkpoints_.size(), 0.0);
    checkpoint_max_.assign(n * checkpoints_.size(), 0.0);
    wins_.assign(n, 0);
    if (config_.keep_paths) {
        wealth_.assign(n * idx(config_.trials + 1), 0.0);
        log_increments_.assign(n * idx(config_.trials), 0.0);
    }
}

double TrajectoryBatch::wealth_at(std::int64_t path, std::size_t checkpoint) const {
    return checkpoint_wealth_[idx(path) * checkpoints_.size() + checkpoint];
}

double TrajectoryBatch::running_max_at(std::int64_t path, std::size_t checkpoint) const {
    return checkpoint_max_[idx(path) * checkpoints_.size() + checkpoint];
}

double TrajectoryBatch::final_wealth(std::int64_t path) const {
    return wealth_at(path, checkpoints_.size() - 1);
}

double TrajectoryBatch::running_max(std::int64_t path) const {
    return running_max_at(path, checkpoints_.size() - 1);
}

std::span<const double> TrajectoryBatch::wealth_path(std::int64_t path) const {
    if (!has_paths()) throw DomainError("batch was simulated in summary mode");
    const auto len = idx(config_.trials + 1);
    return {wealth_.data() + idx(path) * len, len};
}

std::span<const double> TrajectoryBatch::log_increments(std::int64_t path) const {
    if (!has_paths()) throw DomainError("batch was simulated in summary mode");
    const auto len = idx(config_.trials);
    return {log_increments_.data() + idx(path) * len, len};
}

void TrajectoryBatch::run_paths(std::int64_t begin, std::int64_t end) {
    const double f = config_.f.value();
    const double up = 1.0 + f;
    const double down = 1.0 - f;
    const double log_up = std::log1p(f);
    const double log_down = std::log1p(-f);
    const std::int64_t n = config_.trials;
    const std::size_t ncp = checkpoints_.size();
    for (std::int64_t k = begin; k < end; ++k) {
        TrialSource source(Substream{config_.seed, static_cast<std::uint64_t>(k)}, config_.p.value());
        double w = config_.w0;
        double peak = w;
        std::int64_t u = 0;
        std::size_t c = 0;
        double* cw = checkpoint_wealth_.data() + idx(k) * ncp;
        double* cm = checkpoint_max_.data() + idx(k) * ncp;
        double* path = config_.keep_paths ? wealth_.data() + idx(k) * idx(n + 1) : nullptr;
        double* logs = config_.keep_paths ? log_increments_.data() + idx(k) * idx(n) : nullptr;
        if (path) path[0] = w;
        if (checkpoints_[0] == 0) {
            cw[0] = w;
            cm[0] = peak;
            c = 1;
        }
        for (std::int64_t i = 1; i <= n; ++i) {
            const bool win = source.next() > 0;
            if (win) {
                ++u;
                w *= up;
            } else {
                w *= down;
            }
            peak = std::max(peak, w);
            if (path) {
                path[i] = w;
                logs[i - 1] = win ? log_up : log_down;
            }
            if (c < ncp && checkpoints_[c] == i) {
                cw[c] = w;
                cm[c] = peak;
                ++c;
            }
        }
        wins_[idx(k)] = u;
    }
}

TrajectoryBatch simulate(const SimConfig& config) {
    config.validate();
    std::vector<std::int64_t> cps = config.checkpoints;
    if (cps.empty()) cps = default_checkpoints(config.trials);
    cps.push_back(0);
    cps.push_back(config.trials);
    std::sort(cps.begin(), cps.end());
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());

    TrajectoryBatch batch(config, std::move(cps));
    int threads = config.threads == 0 ? static_cast<int>(std::thread::hardware_concurrency()) : config.threads;
    threads = static_cast<int>(std::clamp<std::int64_t>(threads, 1, config.paths));
    if (threads == 1) {
        batch.run_paths(0, config.paths);
        return batch;
    }
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        const std::int64_t begin = config.paths * t / threads;
        const std::int64_t end = config.paths * (t + 1) / threads;
        workers.emplace_back([&batch, begin, end] { batch.run_paths(begin, end); });
    }
    for (auto& w : workers) w.join();
    return batch;
}

namespace {

double path_log_growth(const TrajectoryBatch& batch, std::int64_t k) {
    const auto& c = batch.config();
    const double f = c.f.value();
    const std::int64_t u = batch.wins(k);
    const std::int64_t v = c.trials - u;
    double total = u > 0 ? static_cast<double>(u) * std::log1p(f) : 0.0;
    if (v > 0) total += static_cast<double>(v) * std::log1p(-f);
    return total / static_cast<double>(c.trials);
}

}  // namespace

WealthStats wealth_stats(const TrajectoryBatch& batch) {
    const std::int64_t n = batch.paths();
    const auto final_w = mean_se(n, [&](std::int64_t k) { return batch.final_wealth(k); });
    std::vector<double> growth;
    growth.reserve(static_cast<std::size_t>(n));
    std::vector<double> maxima(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) {
        maxima[static_cast<std::size_t>(k)] = batch.running_max(k);
        if (!batch.ruined(k)) growth.push_back(path_log_growth(batch, k));
    }
    const auto g = static_cast<std::int64_t>(growth.size());
    MeanSe lg{0.0, 0.0, 0.0};
    if (g > 0) lg = mean_se(g, [&](std::int64_t k) { return growth[static_cast<std::size_t>(k)]; });
    return {final_w.mean, final_w.var, std::sqrt(final_w.var), lg.mean, lg.se, n - g, std::move(maxima)};
}

double expected_wealth_linear(const SimConfig& config) {
    return config.w0 * std::pow(conditional_growth_factor(config.p, config.f), static_cast<double>(config.trials));
}

ProductExpectation expected_wealth_product(const SimConfig& config) {
    const double f = config.f.value();
    const double p = config.p.value();
    const double base = (1.0 + p * f) * (1.0 - (1.0 - p) * f);
    return {config.w0 * std::pow(base, static_cast<double>(config.trials)), true};
}

double expected_wealth_exponential(const SimConfig& config) {
    const double f = config.f.value();
    if (f > 0.1) {
        throw ApproximationDomainError("exponential expectation needs small F (<= 0.1), got " + std::to_string(f));
    }
    const double p = config.p.value();
    return config.w0 * std::exp(static_cast<double>(config.trials) * f * (p - (1.0 - p)));
}

double expected_wealth_enumerated(const SimConfig& config) {
    const BinomialSpec spec(config.trials, config.p);
    if (config.trials + 1 > kEnumerationGuard) throw RangeError("enumeration guard exceeded");
    const double f = config.f.value();
    double total = 0.0;
    for (std::int64_t a = 0; a <= config.trials; ++a) {
        const double prob = pmf(spec, a);
        if (prob == 0.0) continue;
        const double ups = std::pow(1.0 + f, static_cast<double>(a));
        const double downs = std::pow(1.0 - f, static_cast<double>(config.trials - a));
        total += prob * ups * downs;
    }
    return config.w0 * total;
}

double conditional_growth_factor(Probability p, BetFraction f) {
    return 1.0 + f.value() * GameParams(p).edge();
}

LogDrift log_drift_check(const TrajectoryBatch& batch) {
    if (batch.paths() < 100) throw DomainError("log_drift_check needs at least 100 paths");
    const auto stats = wealth_stats(batch);
    const double theory = utility(batch.config().f, batch.config().p);
    double z = 0.0;
    if (stats.se_log_growth > 0.0) {
        z = (stats.mean_log_growth - theory) / stats.se_log_growth;
    } else if (stats.mean_log_growth != theory) {
        z = std::copysign(std::numeric_limits<double>::infinity(), stats.mean_log_growth - theory);
    }
    return {stats.mean_log_growth, stats.se_log_growth, theory, z, stats.excluded_paths};
}

double ruin_probability_full_stake(Probability p, std::int64_t trials) {
    if (trials < 0) throw DomainError("negative trial count");
    return -std::expm1(static_cast<double>(trials) * std::log(p.value()));
}

double doob_bound(const SimConfig& config, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("doob level must be positive, got " + std::to_string(lambda));
    return std::min(1.0, expected_wealth_linear(config) / lambda);
}

double empirical_sup_prob(const TrajectoryBatch& batch, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("level must be positive, got " + std::to_string(lambda));
    std::int64_t hits = 0;
    for (std::int64_t k = 0; k < batch.paths(); ++k) {
        if (batch.running_max(k) >= lambda) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(batch.paths());
}

std::vector<double> doob_lambda_grid(const TrajectoryBatch& batch, int count) {
    if (count < 1) throw DomainError("lambda grid needs at least one point");
    const double w0 = batch.config().w0;
    double top = w0;
    for (std::int64_t k = 0; k < batch.paths(); ++k) top = std::max(top, batch.running_max(k));
    if (top <= w0) top = 2.0 * w0;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    const double log_span = std::log(top / w0);
    for (int j = 1; j <= count; ++j) grid.push_back(w0 * std::exp(log_span * j / count));
    return grid;
}

DoobDecomposition doob_decompose(const TrajectoryBatch& batch) {
    const auto& c = batch.config();
    if (!(c.p.value() > 0.5)) throw DomainError("Doob decomposition is scoped to p > 1/2");
    if (classify(c.f, c.p).regime == Regime::DecaySupermartingale) {
        throw DomainError("Doob decomposition is scoped to the growth regime (F <= F*)");
    }
    const double g = conditional_growth_factor(c.p, c.f);
    if (g == 0.0) throw DegenerateError("conditional growth factor is zero");

    DoobDecomposition out;
    out.steps = batch.checkpoints();
    const std::size_t ncp = out.steps.size();
    out.martingale_part.resize(static_cast<std::size_t>(batch.paths()) * ncp);
    for (std::size_t j = 0; j < ncp; ++j) {
        const double step = static_cast<double>(out.steps[j]);
        const double scale = std::pow(g, -step);
        const double drift = c.w0 * std::pow(g, step) - c.w0;
        out.drift.push_back(drift);
        double gap = 0.0;
        for (std::int64_t k = 0; k < batch.paths(); ++k) {
            const double w = batch.wealth_at(k, j);
            const double m = w * scale;
            out.martingale_part[static_cast<std::size_t>(k) * ncp + j] = m;
            gap += std::abs(w - (m + drift));
        }
        const auto ms = mean_se(batch.paths(), [&](std::int64_t k) {
            return out.martingale_part[static_cast<std::size_t>(k) * ncp + j];
        });
        out.mean_martingale.push_back(ms.mean);
        out.se_martingale.push_back(ms.se);
        out.mean_pathwise_gap.push_back(gap / static_cast<double>(batch.paths()));
    }
    return out;
}

std::vector<CheckpointStats> checkpoint_table(const TrajectoryBatch& batch, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("level must be positive");
    const auto& c = batch.config();
    const double g = conditional_growth_factor(c.p, c.f);
    std::vector<CheckpointStats> rows;
    for (std::size_t j = 0; j < batch.checkpoints().size(); ++j) {
        const std::int64_t step = batch.checkpoints()[j];
        const double scale = std::pow(g, -static_cast<double>(step));
        const auto w = mean_se(batch.paths(), [&](std::int64_t k) { return batch.wealth_at(k, j); });
        const auto m = mean_se(batch.paths(), [&](std::int64_t k) { return batch.wealth_at(k, j) * scale; });
        std::int64_t hits = 0;
        for (std::int64_t k = 0; k < batch.paths(); ++k) {
            if (batch.running_max_at(k, j) >= lambda) ++hits;
        }
        const SimConfig at = c.with_trials(step);
        rows.push_back({step, w.mean, w.var, m.mean, m.se,
                        static_cast<double>(hits) / static_cast<double>(batch.paths()),
                        std::min(1.0, expected_wealth_linear(at) / lambda), expected_wealth_linear(at),
                        expected_wealth_product(at).value});
    }
    return rows;
}

}  // namespace kelly
