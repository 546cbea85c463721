#pragma once

#include <cstddef>
#include <vector>

#include "sfm/value.hpp"

namespace sfm {

/// Domain of a node: either a finite, nonempty, duplicate-free list of
/// values (declaration order is preserved and meaningful for deterministic
/// search), or the real line, which admits exact numeric values and is
/// excluded from enumeration.
class Domain {
public:
    static Domain finite(std::vector<Value> values);
    static Domain real_line() { return Domain(); }

    bool is_finite() const { return finite_; }
    const std::vector<Value>& values() const;
    std::size_t size() const;
    bool contains(const Value& v) const;

    bool operator==(const Domain& o) const {
        return finite_ == o.finite_ && values_ == o.values_;
    }

private:
    Domain() : finite_(false) {}
    explicit Domain(std::vector<Value> values)
        : finite_(true), values_(std::move(values)) {}

    bool finite_;
    std::vector<Value> values_;
};

} // namespace sfm
