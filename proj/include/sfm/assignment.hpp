#pragma once

#include <map>
#include <set>
#include <string>

#include "sfm/node.hpp"
#include "sfm/value.hpp"

namespace sfm {

/// Partial or complete map from nodes to values.  Iteration order is the
/// node-name order of the underlying map, so equal assignments print and
/// hash identically.
class Assignment {
public:
    Assignment() = default;
    Assignment(std::initializer_list<std::pair<const NodeId, Value>> init)
        : bindings_(init) {}

    void set(const NodeId& node, const Value& v) { bindings_[node] = v; }
    bool contains(const NodeId& node) const { return bindings_.count(node) != 0; }
    const Value& at(const NodeId& node) const;
    void erase(const NodeId& node) { bindings_.erase(node); }

    std::size_t size() const { return bindings_.size(); }
    bool empty() const { return bindings_.empty(); }
    std::set<NodeId> keys() const;

    /// True when every binding of `fragment` appears in *this.
    bool extends(const Assignment& fragment) const;
    Assignment restrict_to(const std::set<NodeId>& nodes) const;
    /// Copy of *this with `updates` written over it.
    Assignment overlaid_with(const Assignment& updates) const;

    auto begin() const { return bindings_.begin(); }
    auto end() const { return bindings_.end(); }

    bool operator==(const Assignment& o) const { return bindings_ == o.bindings_; }
    bool operator<(const Assignment& o) const { return bindings_ < o.bindings_; }

    /// Debug text with keys in name order, e.g. "{A:1, B:2}".
    std::string str() const;

private:
    std::map<NodeId, Value> bindings_;
};

} // namespace sfm
