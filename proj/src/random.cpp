#include "kelly/random.hpp"

namespace kelly {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

TrialSource::TrialSource(Substream stream, double p)
    : engine_(splitmix64(splitmix64(stream.seed) ^ splitmix64(stream.index + 0x632BE59BD9B4E019ULL))),
      p_(p) {}

double TrialSource::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

int TrialSource::next() { return uniform() < p_ ? 1 : -1; }

}  // namespace kelly
