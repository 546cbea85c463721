#pragma once

#include <set>
#include <utility>
#include <vector>

#include "sfm/node.hpp"

namespace sfm {

/// Witness that a finite directed graph has a root or a cycle; one of the
/// two always exists, so the search never fails on a nonempty graph.
struct GmtWitness {
    enum class Kind { root, cycle };

    Kind kind;
    NodeId root;                 // kind == root: a node with no incoming edge
    std::vector<NodeId> cycle;   // kind == cycle: first == last, consecutive
                                 // entries are edges
};

/// Finds a witness deterministically: the smallest root if any exists,
/// otherwise the cycle reached by walking smallest parents, rotated to start
/// at its smallest node.
GmtWitness gmt_witness(const std::set<NodeId>& nodes,
                       const std::set<std::pair<NodeId, NodeId>>& edges);

} // namespace sfm
