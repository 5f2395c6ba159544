#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace storyline {

// Exact rational with int64 numerator/denominator, used for event times.
// Event coincidence is set-theoretic, so times are never compared as floats.
// Values are constructed from integers or decimal literals ("3", "-0.25"),
// which keeps denominators of the form 2^a 5^b and printable as decimals.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num_(value) {}
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        reduce();
    }

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }

    // Accepts [-]digits[.digits]; rejects anything else, including
    // literals too long to represent exactly in 64 bits.
    static std::optional<Rational> parse(std::string_view text) {
        if (text.empty()) return std::nullopt;
        bool negative = false;
        std::size_t pos = 0;
        if (text[0] == '+' || text[0] == '-') {
            negative = text[0] == '-';
            pos = 1;
        }
        std::int64_t num = 0;
        std::int64_t den = 1;
        bool any_digit = false;
        bool seen_dot = false;
        for (; pos < text.size(); ++pos) {
            char c = text[pos];
            if (c == '.') {
                if (seen_dot) return std::nullopt;
                seen_dot = true;
                continue;
            }
            if (c < '0' || c > '9') return std::nullopt;
            any_digit = true;
            if (num > (INT64_MAX - 9) / 10) return std::nullopt;
            num = num * 10 + (c - '0');
            if (seen_dot) {
                if (den > INT64_MAX / 10) return std::nullopt;
                den *= 10;
            }
        }
        if (!any_digit) return std::nullopt;
        return Rational(negative ? -num : num, den);
    }

    // Canonical decimal form: "3", "-0.25". Denominators are 2^a 5^b by
    // construction; anything else would be an internal error.
    std::string str() const {
        std::int64_t scale = 1;
        std::int64_t den = den_;
        while (den % 2 == 0) { den /= 2; scale *= 5; }
        while (den % 5 == 0) { den /= 5; scale *= 2; }
        if (den != 1) throw std::logic_error("Rational: not a decimal value");
        std::int64_t digits = den_ * scale;  // power of ten
        std::int64_t scaled = num_ * scale;
        bool negative = scaled < 0;
        std::uint64_t mag = negative ? -static_cast<std::uint64_t>(scaled) : scaled;
        std::string whole = std::to_string(mag / digits);
        std::string out = negative ? "-" + whole : whole;
        std::uint64_t frac = mag % digits;
        if (frac != 0) {
            std::string frac_str = std::to_string(frac);
            std::string padded(std::to_string(digits).size() - 1 - frac_str.size(), '0');
            padded += frac_str;
            while (padded.back() == '0') padded.pop_back();
            out += "." + padded;
        }
        return out;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
    void reduce() {
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

using Time = Rational;

}  // namespace storyline
