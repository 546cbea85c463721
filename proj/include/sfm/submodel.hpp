#pragma once

#include <vector>

#include "sfm/model.hpp"

namespace sfm {

/// Restriction of `model` to `keep_nodes`.  Nodes in `keep_as_endo` keep
/// their full parent sets (which must lie inside `keep_nodes`) and their
/// functions; every other kept node becomes a root.  `keep_as_endo` must be
/// a subset of the model's endo-nodes.
Sfm extract_sub_sfm(const Sfm& model, const std::set<NodeId>& keep_nodes,
                    const std::set<NodeId>& keep_as_endo);

/// The four-part check: `sub`'s graph is a subgraph of `model`'s, sub's
/// endo-nodes keep their complete parent sets, and shared nodes agree on
/// domains and (for sub's endo-nodes) functions.
bool is_sub_sfm(const Sfm& sub, const Sfm& model);

/// Union of mutually compatible parts.  Pairwise prerequisites: shared nodes
/// have equal domains; nodes endogenous in two parts have equal parent sets
/// and equal functions.  The union graph must be acyclic (CycleError names a
/// witness).
Sfm compose(const std::vector<Sfm>& parts);

/// Most-fragmented decomposition: one part per endo-node (the node plus its
/// parents), plus a single-node part for each root nothing references, so
/// composing the parts restores the model exactly.  A model with no
/// endo-nodes decomposes to itself.
std::vector<Sfm> decompose(const Sfm& model);

} // namespace sfm
