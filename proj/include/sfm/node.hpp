#pragma once

#include <compare>
#include <string>

namespace sfm {

/// Name of a model node.  Ordered lexicographically by name.
struct NodeId {
    std::string name;

    NodeId() = default;
    NodeId(std::string n) : name(std::move(n)) {}
    NodeId(const char* n) : name(n) {}

    auto operator<=>(const NodeId&) const = default;
};

} // namespace sfm
