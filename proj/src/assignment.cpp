#include "sfm/assignment.hpp"

#include "sfm/errors.hpp"

namespace sfm {

const Value& Assignment::at(const NodeId& node) const {
    auto it = bindings_.find(node);
    if (it == bindings_.end()) {
        throw PreconditionError("assignment has no binding for node " + node.name);
    }
    return it->second;
}

std::set<NodeId> Assignment::keys() const {
    std::set<NodeId> out;
    for (const auto& [node, value] : bindings_) out.insert(node);
    return out;
}

bool Assignment::extends(const Assignment& fragment) const {
    for (const auto& [node, value] : fragment) {
        auto it = bindings_.find(node);
        if (it == bindings_.end() || !(it->second == value)) return false;
    }
    return true;
}

Assignment Assignment::restrict_to(const std::set<NodeId>& nodes) const {
    Assignment out;
    for (const auto& [node, value] : bindings_) {
        if (nodes.count(node)) out.set(node, value);
    }
    return out;
}

Assignment Assignment::overlaid_with(const Assignment& updates) const {
    Assignment out = *this;
    for (const auto& [node, value] : updates) out.set(node, value);
    return out;
}

std::string Assignment::str() const {
    std::string s = "{";
    bool first = true;
    for (const auto& [node, value] : bindings_) {
        if (!first) s += ", ";
        first = false;
        s += node.name;
        s += ':';
        s += value.str();
    }
    s += '}';
    return s;
}

} // namespace sfm
