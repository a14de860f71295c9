#pragma once

#include <cstdint>
#include <random>

namespace kelly {

/// Identifies an independent random stream: (master seed, stream index).
/// Path k of a simulation always draws from Substream{seed, k}.
struct Substream {
    std::uint64_t seed = 0;
    std::uint64_t index = 0;

    friend bool operator==(const Substream&, const Substream&) = default;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Bernoulli(p) source for one substream. The generator sequence is fixed
/// by the standard and the uniform is built by hand, so draws are
/// identical on every platform.
class TrialSource {
public:
    TrialSource(Substream stream, double p);

    /// +1 with probability p, otherwise -1.
    int next();

    double uniform();

private:
    std::mt19937_64 engine_;
    double p_;
};

}  // namespace kelly
