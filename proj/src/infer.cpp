#include "sfm/infer.hpp"

#include "sfm/errors.hpp"

namespace sfm {

namespace {

int sum_counts(const std::map<NodeId, int>& evals) {
    int total = 0;
    for (const auto& [node, n] : evals) total += n;
    return total;
}

// Checks that `exo` binds exactly the model's roots with in-domain values.
void check_full_exo(const Sfm& model, const Assignment& exo) {
    std::set<NodeId> roots = model.exo_nodes();
    for (const auto& u : roots) {
        if (!exo.contains(u)) {
            throw PreconditionError("exo assignment is missing root node " + u.name);
        }
    }
    for (const auto& [u, v] : exo) {
        if (!roots.count(u)) {
            throw PreconditionError("exo assignment binds non-root node " + u.name);
        }
        if (!model.domain(u).contains(v)) {
            throw PreconditionError("value " + v.str() + " outside domain of " + u.name);
        }
    }
}

} // namespace

int InferResult::total_evals() const { return sum_counts(evals); }
int PartialResult::total_evals() const { return sum_counts(evals); }

InferResult vfi(const Sfm& model, const Assignment& exo) {
    check_full_exo(model, exo);
    InferResult result;
    result.world = exo;
    for (const auto& u : topological_order(model)) {
        if (model.is_exo(u)) continue;
        Value v = model.function(u).apply(result.world);
        if (!model.domain(u).contains(v)) {
            throw EvalError("computed value " + v.str() + " outside domain of " + u.name);
        }
        result.world.set(u, v);
        result.evals[u] = 1;
    }
    return result;
}

InferResult cfi(const Sfm& model, const Assignment& reference,
                const Assignment& new_exo) {
    if (!satisfies(model, reference)) {
        throw PreconditionError("reference world does not satisfy the model");
    }
    std::set<NodeId> roots = model.exo_nodes();
    for (const auto& [u, v] : new_exo) {
        if (!roots.count(u)) {
            throw PreconditionError("new exo assignment binds non-root node " + u.name);
        }
        if (!model.domain(u).contains(v)) {
            throw PreconditionError("value " + v.str() + " outside domain of " + u.name);
        }
    }

    std::map<NodeId, bool> changed;
    for (const auto& u : model.nodes()) {
        changed[u] = new_exo.contains(u) && !(new_exo.at(u) == reference.at(u));
    }

    InferResult result;
    for (const auto& u : topological_order(model)) {
        if (model.is_exo(u)) {
            // A root differs from the reference only when rebound.
            result.world.set(u, changed[u] ? new_exo.at(u) : reference.at(u));
            continue;
        }
        bool stale = changed[u];
        for (const auto& p : model.parents(u)) stale = stale || changed[p];
        if (!stale) {
            result.world.set(u, reference.at(u));
            result.evals[u] = 0;
            continue;
        }
        Value v = model.function(u).apply(result.world);
        result.evals[u] = 1;
        if (v == reference.at(u)) {
            // Recomputation reproduced the old value; downstream nodes need
            // not wake up on account of this one.
            changed[u] = false;
            result.world.set(u, reference.at(u));
        } else {
            if (!model.domain(u).contains(v)) {
                throw EvalError("computed value " + v.str() + " outside domain of " +
                                u.name);
            }
            changed[u] = true;
            result.world.set(u, v);
        }
    }
    return result;
}

PartialResult partial_fi(const Sfm& model, const Assignment& exo,
                         const std::set<NodeId>& targets) {
    check_full_exo(model, exo);
    for (const auto& t : targets) {
        if (!model.nodes().count(t)) {
            throw PreconditionError("target node " + t.name + " is not in the model");
        }
    }
    std::set<NodeId> needed = model.ancestors_of(targets);

    PartialResult result;
    Assignment world = exo;
    for (const auto& u : topological_order(model)) {
        if (model.is_exo(u)) continue;
        if (!needed.count(u)) {
            result.evals[u] = 0;
            continue;
        }
        Value v = model.function(u).apply(world);
        if (!model.domain(u).contains(v)) {
            throw EvalError("computed value " + v.str() + " outside domain of " + u.name);
        }
        world.set(u, v);
        result.evals[u] = 1;
    }
    result.values = world.restrict_to(targets);
    return result;
}

std::vector<Assignment> csp_solve(const Sfm& model, const Assignment& known,
                                  const std::set<NodeId>& targets,
                                  std::size_t limit) {
    if (limit == 0) throw PreconditionError("answer limit must be positive");
    for (const auto& u : model.nodes()) {
        if (!model.domain(u).is_finite()) {
            throw UnsupportedEnumerationError("backward inference over non-enumerable domain of " +
                                              u.name);
        }
    }
    for (const auto& [u, v] : known) {
        if (!model.nodes().count(u)) {
            throw PreconditionError("known assignment binds undeclared node " + u.name);
        }
        if (!model.domain(u).contains(v)) {
            throw PreconditionError("value " + v.str() + " outside domain of " + u.name);
        }
    }
    for (const auto& t : targets) {
        if (!model.nodes().count(t)) {
            throw PreconditionError("target node " + t.name + " is not in the model");
        }
    }

    std::vector<NodeId> order = topological_order(model);
    std::vector<Assignment> answers;
    std::set<Assignment> seen;
    Assignment world;

    // Depth-first search in topological variable order.  By the time an
    // endo-node is reached its parents are bound, so its value is forced by
    // its function; only root nodes branch.
    auto search = [&](auto&& self, std::size_t depth) -> bool {
        if (depth == order.size()) {
            Assignment answer = world.restrict_to(targets);
            if (seen.insert(answer).second) {
                answers.push_back(std::move(answer));
                if (answers.size() >= limit) return true;
            }
            return false;
        }
        const NodeId& u = order[depth];
        if (model.is_exo(u)) {
            for (const Value& v : model.domain(u).values()) {
                if (known.contains(u) && !(known.at(u) == v)) continue;
                world.set(u, v);
                if (self(self, depth + 1)) return true;
            }
            world.erase(u);
            return false;
        }
        Value v = model.function(u).apply(world);
        if (!model.domain(u).contains(v)) return false;
        if (known.contains(u) && !(known.at(u) == v)) return false;
        world.set(u, v);
        bool done = self(self, depth + 1);
        world.erase(u);
        return done;
    };
    search(search, 0);
    return answers;
}

} // namespace sfm
