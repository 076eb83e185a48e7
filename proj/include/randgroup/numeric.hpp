// numeric.hpp -- exact integer/rational arithmetic helpers

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace randgroup {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// 50-decimal-digit binary float, used where an exact value does not exist
/// (floors of irrational powers, log ratios).
using BigFloat = boost::multiprecision::cpp_bin_float_50;

inline double to_double(const BigInt& x) { return x.convert_to<double>(); }
inline double to_double(const BigRat& x) { return x.convert_to<double>(); }

/// Floor of the k-th root of a non-negative integer.
inline BigInt integer_nth_root(const BigInt& x, unsigned k) {
    if (x < 0) throw std::invalid_argument("integer_nth_root: negative radicand");
    if (k == 0) throw std::invalid_argument("integer_nth_root: k must be positive");
    if (k == 1 || x <= 1) return x;

    // Binary search on bit length.
    const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(x)) + 1;
    BigInt lo = 1;
    BigInt hi = BigInt(1) << (bits / k + 1);
    while (lo < hi) {
        BigInt mid = (lo + hi + 1) / 2;
        if (boost::multiprecision::pow(mid, k) <= x)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

/// Small exact fraction for thresholds such as the largeness parameter.
/// Kept separate from BigRat so comparisons stay allocation-free.
struct Fraction {
    long long num = 0;
    long long den = 1;

    constexpr Fraction() = default;
    constexpr Fraction(long long n, long long d) : num(n), den(d) {
        if (d <= 0) throw std::invalid_argument("Fraction: denominator must be positive");
    }

    friend constexpr bool operator==(const Fraction&, const Fraction&) = default;

    /// Lowest-terms copy with the sign on the numerator.
    Fraction reduced() const {
        const long long g = std::gcd(num, den);
        return g ? Fraction(num / g, den / g) : Fraction(0, 1);
    }
};

/// Parses "p/q" or a plain decimal ("0.5", "1") into an exact fraction.
/// Decimal digits are taken literally, so no binary rounding is involved.
inline Fraction fraction_from_string(std::string_view text) {
    const auto bad = [&] {
        return std::invalid_argument("fraction_from_string: cannot parse '" +
                                     std::string(text) + "'");
    };
    if (text.empty()) throw bad();

    const auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        try {
            long long p = std::stoll(std::string(text.substr(0, slash)));
            long long q = std::stoll(std::string(text.substr(slash + 1)));
            if (q <= 0) throw bad();
            return Fraction(p, q).reduced();
        } catch (const std::logic_error&) {
            throw bad();
        }
    }

    bool negative = false;
    std::size_t pos = 0;
    if (text[0] == '+' || text[0] == '-') {
        negative = text[0] == '-';
        pos = 1;
    }
    long long num = 0;
    long long den = 1;
    bool seen_digit = false;
    bool seen_dot = false;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (c == '.') {
            if (seen_dot) throw bad();
            seen_dot = true;
            continue;
        }
        if (c < '0' || c > '9') throw bad();
        seen_digit = true;
        num = num * 10 + (c - '0');
        if (seen_dot) den *= 10;
        if (num < 0 || den < 0) throw bad(); // overflow
    }
    if (!seen_digit) throw bad();
    return Fraction(negative ? -num : num, den).reduced();
}

/// Best rational approximation of x with denominator at most max_den,
/// accepted only if it reproduces x to within tol. Used to recognize
/// densities like 0.3 that reach us through a double.
inline std::optional<Fraction> rational_reconstruct(double x, long long max_den,
                                                    double tol) {
    if (!(x == x)) return std::nullopt;
    const bool negative = x < 0;
    double y = negative ? -x : x;

    // Continued-fraction expansion.
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = y;
    for (int iter = 0; iter < 64; ++iter) {
        const double a_f = std::floor(frac);
        if (a_f > static_cast<double>(std::numeric_limits<long long>::max() / 4))
            break;
        const long long a = static_cast<long long>(a_f);
        const long long p2 = a * p1 + p0;
        const long long q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0 || p2 < 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;

        const double approx = static_cast<double>(p1) / static_cast<double>(q1);
        if (std::abs(approx - y) <= tol) {
            return Fraction(negative ? -p1 : p1, q1);
        }
        const double rem = frac - a_f;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    return std::nullopt;
}

} // namespace randgroup
