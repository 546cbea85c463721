#include "sfm/contrast.hpp"

#include "sfm/errors.hpp"

namespace sfm {

namespace {

// satisfies() with a diagnostic naming the first broken function.
void check_world(const Sfm& model, const Assignment& world, const char* label) {
    if (satisfies(model, world)) return;
    for (const auto& u : topological_order(model)) {
        if (model.is_exo(u)) continue;
        if (!(world.at(u) == model.function(u).apply(world))) {
            throw PreconditionError(std::string(label) + " world breaks the function of " +
                                    u.name);
        }
    }
}

} // namespace

Contrast contrast_default(const Sfm& model, const Assignment& default_world,
                          const Assignment& actual_world) {
    check_world(model, default_world, "default");
    check_world(model, actual_world, "actual");
    return Contrast{model, actual_world, default_world, ContrastMode::default_world};
}

Contrast contrast_tweak(const Sfm& model, const Assignment& actual_world,
                        const Assignment& tweak) {
    check_world(model, actual_world, "actual");
    std::set<NodeId> roots = model.exo_nodes();
    for (const auto& [u, v] : tweak) {
        if (!model.nodes().count(u)) {
            throw PreconditionError("tweak binds undeclared node " + u.name);
        }
        if (!roots.count(u)) {
            throw PreconditionError("tweak rebinds non-root node " + u.name +
                                    "; extract a sub-model that makes it a root instead");
        }
    }
    Assignment contrastive = cfi(model, actual_world, tweak).world;
    return Contrast{model, actual_world, contrastive, ContrastMode::tweak};
}

Utterance utterance_of(const Contrast& contrast) {
    Utterance utterance;
    std::set<NodeId> roots = contrast.model.exo_nodes();
    for (const auto& [u, actual_value] : contrast.actual) {
        if (actual_value == contrast.contrastive.at(u)) continue;
        utterance.changed.insert(u);
        if (roots.count(u)) {
            utterance.cause.set(u, actual_value);
        } else {
            utterance.effect.set(u, actual_value);
        }
    }
    // Between two satisfying worlds every non-root change traces back to a
    // root change, so an effect without a cause cannot arise.
    if (utterance.cause.empty() && !utterance.effect.empty()) {
        throw SfmError("non-root difference without a root difference");
    }
    return utterance;
}

std::string render_assignment(const Assignment& a, const std::vector<NodeId>& order) {
    std::string s = "{";
    bool first = true;
    for (const auto& u : order) {
        if (!a.contains(u)) continue;
        if (!first) s += ", ";
        first = false;
        s += u.name;
        s += ':';
        s += a.at(u).str();
    }
    s += '}';
    return s;
}

std::string render_utterance(const Utterance& utterance, const Sfm& model) {
    std::vector<NodeId> order = topological_order(model);
    std::string s = render_assignment(utterance.cause, order);
    s += " causes ";
    if (utterance.effect.empty()) {
        s += "nothing";
    } else {
        s += render_assignment(utterance.effect, order);
    }
    return s;
}

} // namespace sfm
