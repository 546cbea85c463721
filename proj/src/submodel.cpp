#include "sfm/submodel.hpp"

#include "sfm/errors.hpp"

namespace sfm {

Sfm extract_sub_sfm(const Sfm& model, const std::set<NodeId>& keep_nodes,
                    const std::set<NodeId>& keep_as_endo) {
    std::set<NodeId> endo = model.endo_nodes();
    for (const auto& u : keep_nodes) {
        if (!model.nodes().count(u)) {
            throw PreconditionError("kept node " + u.name + " is not in the model");
        }
    }
    for (const auto& u : keep_as_endo) {
        if (!keep_nodes.count(u)) {
            throw PreconditionError("endo-kept node " + u.name + " is not kept");
        }
        if (!endo.count(u)) {
            throw PreconditionError("node " + u.name + " has no function to keep");
        }
        for (const auto& p : model.parents(u)) {
            if (!keep_nodes.count(p)) {
                throw PreconditionError("parent " + p.name + " of kept endo-node " +
                                        u.name + " is not kept");
            }
        }
    }

    std::set<Edge> edges;
    std::map<NodeId, Domain> domains;
    std::map<NodeId, StructuralFunction> functions;
    for (const auto& u : keep_nodes) domains.insert({u, model.domain(u)});
    for (const auto& u : keep_as_endo) {
        for (const auto& p : model.parents(u)) edges.insert({p, u});
        functions.insert({u, model.function(u)});
    }
    return Sfm(keep_nodes, std::move(edges), std::move(domains), std::move(functions));
}

bool is_sub_sfm(const Sfm& sub, const Sfm& model) {
    for (const auto& u : sub.nodes()) {
        if (!model.nodes().count(u)) return false;
        if (!(sub.domain(u) == model.domain(u))) return false;
    }
    for (const auto& e : sub.edges()) {
        if (!model.edges().count(e)) return false;
    }
    for (const auto& u : sub.endo_nodes()) {
        if (sub.parents(u) != model.parents(u)) return false;
        if (!model.has_function(u)) return false;
        if (!(sub.function(u) == model.function(u))) return false;
    }
    return true;
}

Sfm compose(const std::vector<Sfm>& parts) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            const Sfm& a = parts[i];
            const Sfm& b = parts[j];
            std::set<NodeId> b_endo = b.endo_nodes();
            for (const auto& u : a.nodes()) {
                if (!b.nodes().count(u)) continue;
                if (!(a.domain(u) == b.domain(u))) {
                    throw PreconditionError("parts " + std::to_string(i) + " and " +
                                            std::to_string(j) +
                                            " disagree on the domain of " + u.name);
                }
            }
            for (const auto& u : a.endo_nodes()) {
                if (!b_endo.count(u)) continue;
                if (a.parents(u) != b.parents(u)) {
                    throw PreconditionError("parts " + std::to_string(i) + " and " +
                                            std::to_string(j) +
                                            " disagree on the parents of " + u.name);
                }
                if (!(a.function(u) == b.function(u))) {
                    throw PreconditionError("parts " + std::to_string(i) + " and " +
                                            std::to_string(j) +
                                            " disagree on the function of " + u.name);
                }
            }
        }
    }

    std::set<NodeId> nodes;
    std::set<Edge> edges;
    std::map<NodeId, Domain> domains;
    std::map<NodeId, StructuralFunction> functions;
    for (const Sfm& part : parts) {
        nodes.insert(part.nodes().begin(), part.nodes().end());
        edges.insert(part.edges().begin(), part.edges().end());
        domains.insert(part.domains().begin(), part.domains().end());
        functions.insert(part.functions().begin(), part.functions().end());
    }
    Sfm merged(std::move(nodes), std::move(edges), std::move(domains),
               std::move(functions));
    topological_order(merged);  // acyclicity can fail only now; throws CycleError
    return merged;
}

std::vector<Sfm> decompose(const Sfm& model) {
    std::set<NodeId> endo = model.endo_nodes();
    if (endo.empty()) return {model};

    std::vector<Sfm> parts;
    for (const auto& u : endo) {
        std::set<NodeId> keep{u};
        for (const auto& p : model.parents(u)) keep.insert(p);
        parts.push_back(extract_sub_sfm(model, keep, {u}));
    }
    // Roots no endo-node references would be lost; carry them as single-node
    // parts so composition restores the model.
    for (const auto& u : model.exo_nodes()) {
        if (model.children(u).empty()) {
            parts.push_back(extract_sub_sfm(model, {u}, {}));
        }
    }
    return parts;
}

} // namespace sfm
