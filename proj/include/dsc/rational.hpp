#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dsc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

/// Serializes as "num/den" in lowest terms; integers are written "k/1".
inline std::string to_string(const Rational& q) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    return numerator(q).str() + "/" + denominator(q).str();
}

/// Human form: integers without the "/1" suffix.
inline std::string to_display(const Rational& q) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(q) == 1) return numerator(q).str();
    return to_string(q);
}

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

inline BigInt parse_signed_integer(std::string_view s) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    BigInt value{std::string(s)};
    return negative ? BigInt(-value) : value;
}

}  // namespace detail

/// Parses "num/den", an integer, or a finite decimal ("0.75") into an exact
/// rational. Decimals are converted digit-for-digit, never through a double.
inline Rational parse_rational(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = detail::parse_signed_integer(text.substr(0, slash));
        BigInt den = detail::parse_signed_integer(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = text.substr(dot + 1);
        bool negative = false;
        if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
            negative = int_part.front() == '-';
            int_part.remove_prefix(1);
        }
        if (int_part.empty() && frac_part.empty())
            throw std::invalid_argument("not a number: '" + std::string(text) + "'");
        if ((!int_part.empty() && !detail::all_digits(int_part)) ||
            (!frac_part.empty() && !detail::all_digits(frac_part)))
            throw std::invalid_argument("not a decimal: '" + std::string(text) + "'");
        BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac_part.size()));
        BigInt whole = int_part.empty() ? BigInt(0) : BigInt(std::string(int_part));
        BigInt frac = frac_part.empty() ? BigInt(0) : BigInt(std::string(frac_part));
        BigInt num = whole * scale + frac;
        if (negative) num = -num;
        return Rational(num, scale);
    }
    return Rational(detail::parse_signed_integer(text));
}

/// ceil(q) for q >= 0.
inline BigInt ceil_nonnegative(const Rational& q) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    const BigInt& num = numerator(q);
    const BigInt& den = denominator(q);
    return (num + den - 1) / den;
}

/// ceil(1/alpha) for alpha > 0, as a machine integer. This is the per-arc
/// capacity used by the matching player.
inline std::int64_t ceil_inverse(const Rational& alpha) {
    if (alpha <= 0) throw std::invalid_argument("alpha must be positive");
    BigInt c = ceil_nonnegative(Rational(1) / alpha);
    if (c > BigInt(std::int64_t{1} << 40)) throw std::invalid_argument("alpha too small: capacity overflow");
    return c.convert_to<std::int64_t>();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace dsc
