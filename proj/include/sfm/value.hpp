#pragma once

#include <compare>
#include <string>
#include <variant>

#include "sfm/rational.hpp"

namespace sfm {

enum class ValueTag { boolean, integer, rational, symbol };

/// Immutable tagged value.  Values of different tags are never equal.
///
/// A rational whose canonical form has denominator 1 normalizes to the
/// integer tag, so numeric results compare equal no matter which arithmetic
/// route produced them.
class Value {
public:
    Value() : v_(static_cast<long long>(0)) {}

    static Value boolean(bool b) { return Value(b); }
    static Value integer(long long i) { return Value(i); }
    static Value rational(const Rational& r);
    static Value rational(long long num, long long den) {
        return rational(Rational(num, den));
    }
    static Value symbol(std::string name);

    ValueTag tag() const;
    bool is_numeric() const {
        return tag() == ValueTag::integer || tag() == ValueTag::rational;
    }

    bool as_bool() const;
    long long as_int() const;
    const std::string& as_symbol() const;
    /// Numeric view of an integer or rational value.
    Rational numeric() const;

    bool operator==(const Value& o) const { return v_ == o.v_; }
    /// Container ordering: by tag index, then by payload.  Cross-tag order is
    /// arbitrary but total; it carries no numeric meaning.
    bool operator<(const Value& o) const;

    /// Canonical text: "true"/"false", "3", "-1/2", bare symbol name.
    std::string str() const;

private:
    explicit Value(bool b) : v_(b) {}
    explicit Value(long long i) : v_(i) {}
    explicit Value(Rational r) : v_(r) {}
    explicit Value(std::string s) : v_(std::move(s)) {}

    std::variant<bool, long long, Rational, std::string> v_;
};

} // namespace sfm
