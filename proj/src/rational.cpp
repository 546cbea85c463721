#include "sfm/rational.hpp"

#include <cstdlib>
#include <limits>
#include <numeric>

#include "sfm/errors.hpp"

namespace sfm {

namespace {

using i128 = __int128;

long long narrow(i128 v) {
    if (v > std::numeric_limits<long long>::max() ||
        v < std::numeric_limits<long long>::min()) {
        throw EvalError("rational arithmetic overflow");
    }
    return static_cast<long long>(v);
}

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

Rational::Rational(long long n, long long d) {
    if (d == 0) throw EvalError("rational with zero denominator");
    i128 num = n, den = d;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num == 0) {
        den = 1;
    } else {
        i128 g = gcd128(num, den);
        num /= g;
        den /= g;
    }
    num_ = narrow(num);
    den_ = narrow(den);
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = narrow(-static_cast<i128>(num_));
    r.den_ = den_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    i128 num = static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_;
    i128 den = static_cast<i128>(den_) * o.den_;
    if (num == 0) return Rational(0);
    i128 g = gcd128(num, den);
    Rational r;
    r.num_ = narrow(num / g);
    r.den_ = narrow(den / g);
    return r;
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    i128 num = static_cast<i128>(num_) * o.num_;
    i128 den = static_cast<i128>(den_) * o.den_;
    if (num == 0) return Rational(0);
    i128 g = gcd128(num, den);
    Rational r;
    r.num_ = narrow(num / g);
    r.den_ = narrow(den / g);
    return r;
}

Rational Rational::pow(const Rational& base, long long exponent) {
    if (exponent < 0) throw EvalError("negative exponent");
    Rational acc(1);
    Rational b = base;
    long long e = exponent;
    while (e > 0) {
        if (e & 1) acc *= b;
        e >>= 1;
        if (e > 0) b *= b;
    }
    return acc;
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    i128 lhs = static_cast<i128>(num_) * o.den_;
    i128 rhs = static_cast<i128>(o.num_) * den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) {
        s += '/';
        s += std::to_string(den_);
    }
    return s;
}

} // namespace sfm
