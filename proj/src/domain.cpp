#include "sfm/domain.hpp"

#include <algorithm>

#include "sfm/errors.hpp"

namespace sfm {

Domain Domain::finite(std::vector<Value> values) {
    if (values.empty()) throw PreconditionError("finite domain must be nonempty");
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            if (values[i] == values[j]) {
                throw PreconditionError("duplicate domain value: " + values[i].str());
            }
        }
    }
    return Domain(std::move(values));
}

const std::vector<Value>& Domain::values() const {
    if (!finite_) throw UnsupportedEnumerationError("real-line domain has no value list");
    return values_;
}

std::size_t Domain::size() const {
    if (!finite_) throw UnsupportedEnumerationError("real-line domain has no finite size");
    return values_.size();
}

bool Domain::contains(const Value& v) const {
    if (!finite_) return v.is_numeric();
    return std::find(values_.begin(), values_.end(), v) != values_.end();
}

} // namespace sfm
