#ifndef RANDCX_RATIONAL_HPP
#define RANDCX_RATIONAL_HPP

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "randcx/error.hpp"

// Boost 1.74 mixed rational/integer equality recurses forever once C++20
// rewrites `a == b` as `b == a`. Exact non-template overloads win instead.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == rational<std::int64_t>(b); }
inline bool operator==(int b, const rational<std::int64_t>& a) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) { return a == rational<std::int64_t>(b); }
inline bool operator==(std::int64_t b, const rational<std::int64_t>& a) { return a == rational<std::int64_t>(b); }
} // namespace boost

namespace randcx {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r)
{
    if (r.denominator() == 1) {
        return std::to_string(r.numerator());
    }
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rational& r)
{
    return boost::rational_cast<double>(r);
}

/// Parses "a/b", plain integers, and decimals such as "0.15" or "1e-3" into an
/// exact rational. At most 18 significant digits are accepted.
inline Rational parse_rational(std::string_view text)
{
    auto bad = [&](const char* why) -> Rational {
        fail(ErrorKind::parse_error, "cannot parse rational '" + std::string(text) + "': " + why);
    };
    if (text.empty()) {
        return bad("empty");
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_rational(text.substr(0, slash));
        Rational den = parse_rational(text.substr(slash + 1));
        if (num.denominator() != 1 || den.denominator() != 1) {
            return bad("fraction parts must be integers");
        }
        if (den == 0) {
            return bad("zero denominator");
        }
        return num / den;
    }

    std::size_t i = 0;
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
        negative = text[i] == '-';
        ++i;
    }
    std::int64_t mantissa = 0;
    int digits = 0;
    int scale = 0; // number of digits after the decimal point
    bool seen_point = false;
    bool any_digit = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (seen_point) {
                return bad("two decimal points");
            }
            seen_point = true;
            continue;
        }
        if (c == 'e' || c == 'E') {
            break;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return bad("unexpected character");
        }
        any_digit = true;
        if (mantissa == 0 && c == '0') {
            if (seen_point) {
                ++scale;
            }
            continue;
        }
        if (++digits > 18) {
            return bad("too many significant digits");
        }
        mantissa = mantissa * 10 + (c - '0');
        if (seen_point) {
            ++scale;
        }
    }
    if (!any_digit) {
        return bad("no digits");
    }
    int exponent = 0;
    if (i < text.size()) {
        std::string_view exp_text = text.substr(i + 1);
        bool exp_negative = false;
        std::size_t j = 0;
        if (j < exp_text.size() && (exp_text[j] == '+' || exp_text[j] == '-')) {
            exp_negative = exp_text[j] == '-';
            ++j;
        }
        if (j == exp_text.size()) {
            return bad("empty exponent");
        }
        for (; j < exp_text.size(); ++j) {
            if (!std::isdigit(static_cast<unsigned char>(exp_text[j]))) {
                return bad("bad exponent");
            }
            exponent = exponent * 10 + (exp_text[j] - '0');
            if (exponent > 40) {
                return bad("exponent out of range");
            }
        }
        if (exp_negative) {
            exponent = -exponent;
        }
    }
    int power = exponent - scale;
    if (mantissa == 0) {
        return Rational(0);
    }
    auto pow10 = [&](int k) -> std::int64_t {
        std::int64_t v = 1;
        for (int t = 0; t < k; ++t) {
            if (v > INT64_MAX / 10) {
                bad("magnitude out of range");
            }
            v *= 10;
        }
        return v;
    };
    Rational value;
    if (power >= 0) {
        std::int64_t factor = pow10(power);
        if (mantissa > INT64_MAX / factor) {
            return bad("magnitude out of range");
        }
        value = Rational(mantissa * factor);
    } else {
        // Strip common factors of ten before building the denominator.
        while (power < 0 && mantissa % 10 == 0) {
            mantissa /= 10;
            ++power;
        }
        value = Rational(mantissa, pow10(-power));
    }
    return negative ? -value : value;
}

} // namespace randcx

#endif
