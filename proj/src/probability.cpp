#include "kelly/probability.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

#include "kelly/errors.hpp"

namespace kelly {
namespace {

std::string shortest(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

using Wide = __int128;

Rational reduce(Wide num, Wide den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Wide a = num < 0 ? -num : num;
    Wide b = den;
    while (b != 0) {
        Wide t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    constexpr Wide kMax = INT64_MAX;
    if (num > kMax || num < -kMax || den > kMax) throw RangeError("rational overflow");
    return Rational{static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

std::int64_t parse_integer(std::string_view text, std::string_view whole) {
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw DomainError("not a number: '" + std::string(whole) + "'");
    }
    return out;
}

Rational pow10(int exponent) {
    if (exponent > 18) throw RangeError("decimal exponent too large");
    std::int64_t v = 1;
    for (int i = 0; i < exponent; ++i) v *= 10;
    return Rational{v, 1};
}

}  // namespace

Rational Rational::make(std::int64_t num, std::int64_t den) { return reduce(num, den); }

Rational Rational::parse(std::string_view text) {
    const std::string_view whole = text;
    if (text.empty()) throw DomainError("empty number");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        return make(parse_integer(text.substr(0, slash), whole),
                    parse_integer(text.substr(slash + 1), whole));
    }
    int exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        exponent = static_cast<int>(parse_integer(text.substr(e + 1), whole));
        text = text.substr(0, e);
    }
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    std::string digits;
    int fraction_digits = 0;
    bool seen_point = false;
    for (char c : text) {
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_point) ++fraction_digits;
        } else {
            throw DomainError("not a number: '" + std::string(whole) + "'");
        }
    }
    if (digits.empty()) throw DomainError("not a number: '" + std::string(whole) + "'");
    // Strip leading zeros so long fractional literals like 0.000001 fit.
    const auto first = digits.find_first_not_of('0');
    digits = first == std::string::npos ? "0" : digits.substr(first);
    if (digits.size() > 18) throw RangeError("too many digits: '" + std::string(whole) + "'");
    Rational mantissa{parse_integer(digits, whole) * (negative ? -1 : 1), 1};
    const int shift = exponent - fraction_digits;
    if (shift >= 0) return mantissa * pow10(shift);
    return reduce(mantissa.num, pow10(-shift).num);
}

double Rational::to_double() const {
    // Both operands are exact below 2^53, so the quotient is rounded once.
    constexpr std::int64_t kExact = std::int64_t{1} << 53;
    if (std::abs(num) <= kExact && den <= kExact) {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

Rational operator+(const Rational& a, const Rational& b) {
    return reduce(Wide{a.num} * b.den + Wide{b.num} * a.den, Wide{a.den} * b.den);
}

Rational operator-(const Rational& a, const Rational& b) {
    return reduce(Wide{a.num} * b.den - Wide{b.num} * a.den, Wide{a.den} * b.den);
}

Rational operator*(const Rational& a, const Rational& b) {
    return reduce(Wide{a.num} * b.num, Wide{a.den} * b.den);
}

bool operator<(const Rational& a, const Rational& b) {
    return Wide{a.num} * b.den < Wide{b.num} * a.den;
}

Probability::Probability(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw DomainError("probability out of [0,1]: " + shortest(value));
    }
}

Probability::Probability(Rational exact) : value_(exact.to_double()), exact_(exact) {
    if (exact.num < 0 || exact.num > exact.den) {
        throw DomainError("probability out of [0,1]: " + std::to_string(exact.num) + "/" +
                          std::to_string(exact.den));
    }
}

Probability Probability::parse(std::string_view text) {
    const Rational exact = Rational::parse(text);
    if (exact.num < 0 || exact.num > exact.den) {
        throw DomainError("probability out of [0,1]: " + std::string(text));
    }
    return Probability(exact);
}

Probability Probability::complement() const {
    if (exact_) return Probability(Rational{1, 1} - *exact_);
    return Probability(1.0 - value_);
}

BetFraction::BetFraction(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw DomainError("bet fraction out of [0,1]: " + shortest(value));
    }
}

}  // namespace kelly
