#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace gcontract {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& value) { return value.convert_to<double>(); }

/// Exact value of a finite double (every finite double is a dyadic rational).
inline Rational from_double(double value) { return Rational(value); }

inline std::string to_string(const Rational& value) { return value.str(); }

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

/// Parses "p", "p/q", "-1.25", "1e-6" and "2.5E3" exactly.
inline std::optional<Rational> parse_rational(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.empty()) return std::nullopt;

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = parse_rational(text.substr(0, slash));
        auto den = parse_rational(text.substr(slash + 1));
        if (!num || !den || *den == 0) return std::nullopt;
        return *num / *den;
    }

    bool negative = false;
    std::size_t pos = 0;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    BigInt digits = 0;
    long long fraction_digits = 0;
    bool any_digit = false;
    bool seen_point = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = digits * 10 + (c - '0');
            any_digit = true;
            if (seen_point) ++fraction_digits;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) return std::nullopt;

    long long exponent = 0;
    if (pos < text.size()) {
        if (text[pos] != 'e' && text[pos] != 'E') return std::nullopt;
        ++pos;
        bool exp_negative = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            exp_negative = text[pos] == '-';
            ++pos;
        }
        if (pos >= text.size()) return std::nullopt;
        for (; pos < text.size(); ++pos) {
            char c = text[pos];
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
            exponent = exponent * 10 + (c - '0');
            if (exponent > 4000) return std::nullopt;
        }
        if (exp_negative) exponent = -exponent;
    }

    long long scale = exponent - fraction_digits;
    BigInt power = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(scale < 0 ? -scale : scale));
    Rational result = scale < 0 ? Rational(digits, power) : Rational(digits * power);
    return negative ? Rational(-result) : result;
}

}  // namespace gcontract
