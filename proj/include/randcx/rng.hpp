#ifndef RANDCX_RNG_HPP
#define RANDCX_RNG_HPP

// Counter-based random streams.
//
// A stream is identified by a 64-bit key derived from the user seed and a
// label string "<purpose>|<n>|<p>|<trial>". The key is FNV-1a-64 of the
// label, mixed with the seed through the SplitMix64 finalizer. Output i of
// the stream is SplitMix64's finalizer applied to key + (i + 1) * 0x9E3779B97F4A7C15,
// so any draw can be recomputed from (key, i) alone. Everything is defined on
// unsigned 64-bit integers and is bit-identical across platforms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "randcx/error.hpp"
#include "randcx/rational.hpp"

namespace randcx {

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t fnv1a64(std::string_view bytes) noexcept
{
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Probability carried as an exact rational plus its canonical decimal text.
class Probability {
public:
    Probability() = default;

    explicit Probability(Rational value) : value_(value)
    {
        if (value_ < 0 || value_ > 1) {
            fail(ErrorKind::bad_probability, "probability " + randcx::to_string(value_) + " outside [0,1]");
        }
        text_ = canonical_text(value_);
    }

    /// Parses a decimal such as "0.03" or a fraction "1/3". BadProbability on
    /// malformed text or values outside [0,1].
    static Probability parse(std::string_view text)
    {
        try {
            return Probability(parse_rational(text));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::bad_probability) {
                throw;
            }
            fail(ErrorKind::bad_probability, e.what());
        }
    }

    /// Rounds a computed value (e.g. c * n^a) to 12 decimals; the rounded text
    /// becomes the exact value used everywhere after.
    static Probability from_double(double value)
    {
        if (!(value >= 0.0) || value > 1.0) {
            fail(ErrorKind::bad_probability, "probability " + std::to_string(value) + " outside [0,1]");
        }
        auto scaled = static_cast<std::int64_t>(std::llround(value * 1e12));
        return Probability(Rational(scaled, 1'000'000'000'000LL));
    }

    const std::string& text() const { return text_; }
    const Rational& value() const { return value_; }
    double as_double() const { return to_double(value_); }
    bool is_zero() const { return value_ == 0; }
    bool is_one() const { return value_ == 1; }

    /// True iff u / 2^53 < p, evaluated exactly.
    bool accepts(std::uint64_t u53) const
    {
        using i128 = __int128;
        return static_cast<i128>(u53) * value_.denominator() <
               static_cast<i128>(value_.numerator()) * (static_cast<i128>(1) << 53);
    }

    friend bool operator==(const Probability& a, const Probability& b) { return a.value_ == b.value_; }

private:
    static std::string canonical_text(const Rational& r)
    {
        std::int64_t den = r.denominator();
        int twos = 0;
        int fives = 0;
        while (den % 2 == 0) {
            den /= 2;
            ++twos;
        }
        while (den % 5 == 0) {
            den /= 5;
            ++fives;
        }
        if (den != 1) {
            return randcx::to_string(r);
        }
        int digits = std::max(twos, fives);
        if (digits == 0) {
            return std::to_string(r.numerator());
        }
        // numerator * 10^digits / denominator is an integer; build it without overflow.
        __int128 scaled = r.numerator();
        for (int i = 0; i < digits; ++i) {
            scaled *= 10;
        }
        scaled /= r.denominator();
        std::string body;
        auto v = static_cast<unsigned long long>(scaled);
        body = std::to_string(v);
        if (body.size() <= static_cast<std::size_t>(digits)) {
            body.insert(0, static_cast<std::size_t>(digits) - body.size() + 1, '0');
        }
        body.insert(body.size() - static_cast<std::size_t>(digits), ".");
        return body;
    }

    Rational value_{0};
    std::string text_ = "0";
};

/// Identifies one reproducible stream.
struct RngSpec {
    std::uint64_t seed = 0;
    std::string purpose = "Y";
    int n = 0;
    std::string p = "0";
    std::uint64_t trial = 0;

    std::string label() const
    {
        return purpose + "|" + std::to_string(n) + "|" + p + "|" + std::to_string(trial);
    }
};

class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}
    explicit CounterRng(const RngSpec& spec) : key_(derive_key(spec)) {}

    static std::uint64_t derive_key(const RngSpec& spec)
    {
        return splitmix64_mix(spec.seed ^ splitmix64_mix(fnv1a64(spec.label())));
    }

    std::uint64_t key() const { return key_; }

    /// Draw number i of the stream, independent of any other draw.
    std::uint64_t at(std::uint64_t i) const { return splitmix64_mix(key_ + (i + 1) * 0x9E3779B97F4A7C15ULL); }

    std::uint64_t next() { return at(counter_++); }

    /// Uniform integer in [0, 2^53).
    std::uint64_t next_u53() { return next() >> 11; }

    /// Uniform double in (0, 1].
    double next_open01() { return static_cast<double>(next_u53() + 1) * 0x1.0p-53; }

    /// Uniform integer in [0, bound) by rejection.
    std::uint64_t next_below(std::uint64_t bound)
    {
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        while (true) {
            auto x = next();
            if (x < limit) {
                return x % bound;
            }
        }
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace randcx

#endif
