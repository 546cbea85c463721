#include "sfm/value.hpp"

#include "sfm/errors.hpp"

namespace sfm {

Value Value::rational(const Rational& r) {
    if (r.is_integral()) return Value(r.num());
    return Value(r);
}

Value Value::symbol(std::string name) {
    if (name.empty()) throw PreconditionError("symbol value with empty name");
    return Value(std::move(name));
}

ValueTag Value::tag() const {
    switch (v_.index()) {
        case 0: return ValueTag::boolean;
        case 1: return ValueTag::integer;
        case 2: return ValueTag::rational;
        default: return ValueTag::symbol;
    }
}

bool Value::as_bool() const {
    if (auto* b = std::get_if<bool>(&v_)) return *b;
    throw EvalError("value is not a boolean: " + str());
}

long long Value::as_int() const {
    if (auto* i = std::get_if<long long>(&v_)) return *i;
    throw EvalError("value is not an integer: " + str());
}

const std::string& Value::as_symbol() const {
    if (auto* s = std::get_if<std::string>(&v_)) return *s;
    throw EvalError("value is not a symbol: " + str());
}

Rational Value::numeric() const {
    if (auto* i = std::get_if<long long>(&v_)) return Rational(*i);
    if (auto* r = std::get_if<Rational>(&v_)) return *r;
    throw EvalError("value is not numeric: " + str());
}

bool Value::operator<(const Value& o) const {
    if (v_.index() != o.v_.index()) return v_.index() < o.v_.index();
    switch (v_.index()) {
        case 0: return std::get<bool>(v_) < std::get<bool>(o.v_);
        case 1: return std::get<long long>(v_) < std::get<long long>(o.v_);
        case 2: return std::get<Rational>(v_) < std::get<Rational>(o.v_);
        default: return std::get<std::string>(v_) < std::get<std::string>(o.v_);
    }
}

std::string Value::str() const {
    switch (v_.index()) {
        case 0: return std::get<bool>(v_) ? "true" : "false";
        case 1: return std::to_string(std::get<long long>(v_));
        case 2: return std::get<Rational>(v_).str();
        default: return std::get<std::string>(v_);
    }
}

} // namespace sfm
