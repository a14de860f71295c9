#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace kelly {

/// Reduced fraction num/den with den > 0. Used to carry decimal inputs
/// such as "0.52" exactly so derived quantities (2p-1, f*F_K) round once.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational make(std::int64_t num, std::int64_t den);
    /// Parses "0.52", "2/3", "1", "1e-3" style literals. Throws DomainError.
    static Rational parse(std::string_view text);

    [[nodiscard]] double to_double() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend bool operator<(const Rational& a, const Rational& b);
};

/// A probability in [0,1]. Construction validates the range. The exact
/// rational is kept when the value came from one.
class Probability {
public:
    Probability(double value);  // NOLINT(google-explicit-constructor)
    Probability(Rational exact);  // NOLINT(google-explicit-constructor)

    static Probability parse(std::string_view text);

    [[nodiscard]] double value() const { return value_; }
    [[nodiscard]] const std::optional<Rational>& exact() const { return exact_; }
    [[nodiscard]] Probability complement() const;

    operator double() const { return value_; }  // NOLINT(google-explicit-constructor)

private:
    double value_;
    std::optional<Rational> exact_;
};

/// Fraction of current wealth staked per trial, in [0,1].
class BetFraction {
public:
    BetFraction(double value);  // NOLINT(google-explicit-constructor)

    [[nodiscard]] double value() const { return value_; }
    operator double() const { return value_; }  // NOLINT(google-explicit-constructor)

private:
    double value_;
};

}  // namespace kelly
