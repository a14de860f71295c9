#include "kelly/bench/run_config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "kelly/errors.hpp"
#include "kelly/risk.hpp"
#include "kelly/utility.hpp"

namespace kelly::bench {
namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view text) {
    Int out{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw UsageError("invalid integer for '" + std::string(key) + "': '" + std::string(text) + "'");
    }
    return out;
}

double parse_real(std::string_view key, std::string_view text) {
    try {
        return Rational::parse(text).to_double();
    } catch (const std::exception&) {
        throw UsageError("invalid number for '" + std::string(key) + "': '" + std::string(text) + "'");
    }
}

template <typename Fn>
auto wrap(std::string_view key, Fn&& fn) {
    try {
        return fn();
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError("invalid value for '" + std::string(key) + "': " + e.what());
    }
}

}  // namespace

StakeMode StakeMode::parse(std::string_view text) {
    if (text == "kelly") return {Kind::Kelly, std::nullopt};
    const auto colon = text.find(':');
    if (colon != std::string_view::npos) {
        const auto kind = text.substr(0, colon);
        const auto value = wrap("stake", [&] { return Rational::parse(text.substr(colon + 1)); });
        if (kind == "fractional") return {Kind::Fractional, value};
        if (kind == "explicit") return {Kind::Explicit, value};
    }
    throw UsageError("stake must be kelly, fractional:<f> or explicit:<F>, got '" + std::string(text) + "'");
}

double StakeMode::stake(const Probability& p) const {
    switch (kind) {
        case Kind::Kelly: return kelly_fraction(p);
        case Kind::Fractional: return fractional_plan(p, Probability(*value)).f_frac;
        case Kind::Explicit: return BetFraction(value->to_double()).value();
    }
    return 0.0;
}

std::vector<Probability> parse_multiplier_list(std::string_view text) {
    std::vector<Probability> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = trim(text.substr(0, comma));
        if (!item.empty()) out.push_back(wrap("f", [&] { return Probability::parse(item); }));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (out.empty()) throw UsageError("empty multiplier list");
    return out;
}

void RunConfig::set(std::string_view key, std::string_view value) {
    value = trim(value);
    if (key == "p") {
        p = wrap(key, [&] { return Probability::parse(value); });
    } else if (key == "stake") {
        stake = StakeMode::parse(value);
    } else if (key == "n") {
        trials = parse_int<std::int64_t>(key, value);
    } else if (key == "paths") {
        paths = parse_int<std::int64_t>(key, value);
    } else if (key == "w0") {
        w0 = parse_real(key, value);
    } else if (key == "seed") {
        seed = parse_int<std::uint64_t>(key, value);
    } else if (key == "out") {
        out = std::filesystem::path(std::string(value));
    } else if (key == "lambda") {
        lambda = parse_real(key, value);
    } else if (key == "threads") {
        threads = parse_int<int>(key, value);
    } else if (key == "grid") {
        grid = parse_int<int>(key, value);
    } else if (key == "f") {
        multipliers = parse_multiplier_list(value);
    } else if (key == "scale") {
        if (value == "quick") {
            scale = VerifyScale::Quick;
        } else if (value == "full") {
            scale = VerifyScale::Full;
        } else {
            throw UsageError("scale must be quick or full");
        }
    } else if (key == "zero_tol") {
        zero_tol = parse_real(key, value);
    } else if (key == "root_tol") {
        root_tol = parse_real(key, value);
    } else {
        throw UsageError("unknown config key '" + std::string(key) + "'");
    }
}

void RunConfig::merge(const RunConfig& o) {
    auto take = [](auto& mine, const auto& theirs) {
        if (theirs) mine = theirs;
    };
    take(p, o.p);
    take(stake, o.stake);
    take(trials, o.trials);
    take(paths, o.paths);
    take(w0, o.w0);
    take(seed, o.seed);
    take(out, o.out);
    take(lambda, o.lambda);
    take(threads, o.threads);
    take(grid, o.grid);
    take(multipliers, o.multipliers);
    take(scale, o.scale);
    take(zero_tol, o.zero_tol);
    take(root_tol, o.root_tol);
}

RunConfig RunConfig::parse(std::string_view text) {
    RunConfig config;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        config.set(trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return config;
}

RunConfig RunConfig::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot read config file " + file.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

std::filesystem::path RunConfig::output_dir() const {
    if (out) return *out;
    if (const char* env = std::getenv("KELLY_BENCH_OUT"); env && *env) return env;
    return ".";
}

}  // namespace kelly::bench
