#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kelly/bench/run_config.hpp"

namespace kelly::bench {

enum class Verdict { Match, Mismatch, NotApplicable };

/// Whether a claim is expected to hold. Documented mismatches are printed
/// but never fail a verification run.
enum class Expectation { Match, DocumentedMismatch };

const char* to_string(Verdict verdict);
const char* to_string(Expectation expectation);

struct ClaimResult {
    double published_value;
    double oracle_value;
    double relative_gap;
    Verdict verdict;
    std::string note;
};

struct VerifyContext {
    std::uint64_t seed;
    VerifyScale scale;
    std::int64_t mc_paths;
};

struct Claim {
    std::string id;
    std::string location;  // which published result the claim checks
    Expectation expected;
    std::function<ClaimResult(const VerifyContext&)> check;
};

const std::vector<Claim>& claim_registry();

struct ErrataEntry {
    std::string id;
    std::string location;
    Expectation expected;
    ClaimResult result;

    [[nodiscard]] bool regression() const {
        return expected == Expectation::Match && result.verdict != Verdict::Match;
    }
};

struct ErrataReport {
    std::vector<ErrataEntry> entries;

    [[nodiscard]] bool has_regression() const;
    /// Header: claim_id,location,published_value,oracle_value,relative_gap,verdict,expected,note
    [[nodiscard]] std::string to_csv() const;
};

/// |published - oracle| / |published|, or |oracle| when published is 0.
double relative_gap(double published, double oracle);

ErrataReport run_verification(std::uint64_t seed, VerifyScale scale);

}  // namespace kelly::bench
