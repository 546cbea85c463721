#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "sfm/model.hpp"

namespace sfm {

/// Result of a full forward or contrastive inference: the complete world and
/// how often each endo-node's function was evaluated (0 or 1 per call).
struct InferResult {
    Assignment world;
    std::map<NodeId, int> evals;

    int total_evals() const;
};

/// Full forward inference: the unique complete world extending `exo`.
/// `exo` must bind exactly the model's root nodes with in-domain values.
/// Every endo function is evaluated exactly once.
InferResult vfi(const Sfm& model, const Assignment& exo);

/// Change-driven forward inference.  `reference` must be a complete world
/// satisfying the model; `new_exo` rebinds a subset of the root nodes.
/// Returns the same world as full inference over the merged roots, but only
/// evaluates functions downstream of an actual change: a recomputation whose
/// result matches the reference clears the change flag, so unaffected
/// descendants are skipped.
InferResult cfi(const Sfm& model, const Assignment& reference,
                const Assignment& new_exo);

/// Result of target-directed forward inference (values cover the targets
/// only, so the assignment is partial).
struct PartialResult {
    Assignment values;
    std::map<NodeId, int> evals;

    int total_evals() const;
};

/// Evaluates only the endo-nodes that are ancestors of `targets` (inclusive)
/// and returns the target values.  Agrees with full inference restricted to
/// the targets.
PartialResult partial_fi(const Sfm& model, const Assignment& exo,
                         const std::set<NodeId>& targets);

/// Backward inference: all distinct target-restrictions of permitted worlds
/// extending `known`, in discovery order of a deterministic backtracking
/// search (topological node order, domain declaration value order).  Stops
/// after `limit` distinct answers.  Requires finite domains and limit >= 1.
/// An empty result means `known` is not permitted.
std::vector<Assignment> csp_solve(const Sfm& model, const Assignment& known,
                                  const std::set<NodeId>& targets,
                                  std::size_t limit);

} // namespace sfm
