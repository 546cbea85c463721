#pragma once

#include <string>

#include "sfm/infer.hpp"

namespace sfm {

enum class ContrastMode { default_world, tweak };

/// A pair of worlds over one model: the actual world and the contrastive
/// world it is compared against.
struct Contrast {
    Sfm model;
    Assignment actual;
    Assignment contrastive;
    ContrastMode mode;
};

/// Builds a contrast from two complete satisfying worlds.  Errors name the
/// first node whose structural function the offending world breaks.
Contrast contrast_default(const Sfm& model, const Assignment& default_world,
                          const Assignment& actual_world);

/// Builds a contrast by rebinding root nodes of the actual world and
/// propagating the change; `tweak` must bind root nodes only (rebinding a
/// non-root is not meaningful here; restrict the model instead).
Contrast contrast_tweak(const Sfm& model, const Assignment& actual_world,
                        const Assignment& tweak);

/// Difference between the two worlds, keyed by where it lies: root-node
/// changes are the cause, non-root changes the effect.  Values come from the
/// actual world.
struct Utterance {
    Assignment cause;
    Assignment effect;
    std::set<NodeId> changed;
};

Utterance utterance_of(const Contrast& contrast);

/// "{A:1, B:2}" with keys filtered to `order` and printed in that order.
std::string render_assignment(const Assignment& a, const std::vector<NodeId>& order);

/// Canonical sentence: "{cause} causes {effect}", keys in the model's
/// topological order; an empty effect renders as "causes nothing".
std::string render_utterance(const Utterance& utterance, const Sfm& model);

} // namespace sfm
