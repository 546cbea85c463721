#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace sfm {

/// Exact rational number with canonical form: denominator > 0 and
/// gcd(|num|, den) == 1.  All arithmetic is exact; intermediate products use
/// 128-bit integers and narrowing back to 64 bits is range-checked.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : num_(n) {}
    Rational(long long n, long long d);

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_integral() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    /// Base raised to a non-negative integer exponent.
    static Rational pow(const Rational& base, long long exponent);

    bool operator==(const Rational& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    std::strong_ordering operator<=>(const Rational& o) const;

    /// "p" when integral, "p/q" otherwise.
    std::string str() const;

private:
    long long num_{0};
    long long den_{1};
};

} // namespace sfm
