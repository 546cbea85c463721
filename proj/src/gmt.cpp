#include "sfm/gmt.hpp"

#include <algorithm>
#include <map>

#include "sfm/errors.hpp"

namespace sfm {

GmtWitness gmt_witness(const std::set<NodeId>& nodes,
                       const std::set<std::pair<NodeId, NodeId>>& edges) {
    if (nodes.empty()) throw PreconditionError("graph has no nodes");
    std::map<NodeId, std::vector<NodeId>> parents;
    for (const auto& [src, dst] : edges) {
        if (!nodes.count(src) || !nodes.count(dst)) {
            throw PreconditionError("edge (" + src.name + ", " + dst.name +
                                    ") references an undeclared node");
        }
        parents[dst].push_back(src);  // edge set is ordered, so sorted per dst
    }

    for (const auto& u : nodes) {
        if (!parents.count(u)) {
            GmtWitness w;
            w.kind = GmtWitness::Kind::root;
            w.root = u;
            return w;
        }
    }

    // Every node has a parent, so following parents from anywhere must
    // revisit a node; the revisit closes a cycle.
    std::vector<NodeId> walk{*nodes.begin()};
    std::map<NodeId, std::size_t> seen{{walk[0], 0}};
    for (;;) {
        const NodeId& parent = parents.at(walk.back()).front();
        auto it = seen.find(parent);
        if (it == seen.end()) {
            seen.insert({parent, walk.size()});
            walk.push_back(parent);
            continue;
        }
        // walk runs child-to-parent; the forward cycle is the repeated
        // segment reversed, entered from the repeated node.
        std::vector<NodeId> cycle{parent};
        for (std::size_t i = walk.size(); i-- > it->second;) {
            cycle.push_back(walk[i]);
        }
        // Canonical rotation: start at the smallest node on the cycle.
        cycle.pop_back();
        auto min_it = std::min_element(cycle.begin(), cycle.end());
        std::rotate(cycle.begin(), min_it, cycle.end());
        cycle.push_back(cycle.front());

        GmtWitness w;
        w.kind = GmtWitness::Kind::cycle;
        w.cycle = std::move(cycle);
        return w;
    }
}

} // namespace sfm
