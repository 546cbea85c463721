#include "sfm/model.hpp"

#include <algorithm>
#include <deque>

#include "sfm/errors.hpp"

namespace sfm {

const Domain& Sfm::domain(const NodeId& u) const {
    auto it = domains_.find(u);
    if (it == domains_.end()) throw PreconditionError("no domain for node " + u.name);
    return it->second;
}

const StructuralFunction& Sfm::function(const NodeId& u) const {
    auto it = functions_.find(u);
    if (it == functions_.end()) throw PreconditionError("no function for node " + u.name);
    return it->second;
}

std::vector<NodeId> Sfm::parents(const NodeId& u) const {
    std::vector<NodeId> out;
    for (const auto& [src, dst] : edges_) {
        if (dst == u) out.push_back(src);
    }
    return out;  // edges_ is ordered, so parents come out sorted
}

std::vector<NodeId> Sfm::children(const NodeId& u) const {
    std::vector<NodeId> out;
    for (const auto& [src, dst] : edges_) {
        if (src == u) out.push_back(dst);
    }
    return out;
}

bool Sfm::is_exo(const NodeId& u) const {
    for (const auto& [src, dst] : edges_) {
        if (dst == u) return false;
    }
    return true;
}

std::set<NodeId> Sfm::exo_nodes() const {
    std::set<NodeId> out = nodes_;
    for (const auto& [src, dst] : edges_) out.erase(dst);
    return out;
}

std::set<NodeId> Sfm::endo_nodes() const {
    std::set<NodeId> out;
    for (const auto& [src, dst] : edges_) {
        if (nodes_.count(dst)) out.insert(dst);
    }
    return out;
}

std::set<NodeId> Sfm::ancestors_of(const std::set<NodeId>& seeds) const {
    std::set<NodeId> out = seeds;
    std::deque<NodeId> queue(seeds.begin(), seeds.end());
    while (!queue.empty()) {
        NodeId u = queue.front();
        queue.pop_front();
        for (const auto& p : parents(u)) {
            if (out.insert(p).second) queue.push_back(p);
        }
    }
    return out;
}

std::set<NodeId> Sfm::descendants_of(const std::set<NodeId>& seeds) const {
    std::set<NodeId> out = seeds;
    std::deque<NodeId> queue(seeds.begin(), seeds.end());
    while (!queue.empty()) {
        NodeId u = queue.front();
        queue.pop_front();
        for (const auto& c : children(u)) {
            if (out.insert(c).second) queue.push_back(c);
        }
    }
    return out;
}

SfmBuilder& SfmBuilder::exo(NodeId node, Domain domain) {
    nodes_.insert(node);
    domains_.insert({node, std::move(domain)});
    return *this;
}

SfmBuilder& SfmBuilder::endo(NodeId node, Domain domain, StructuralFunction function) {
    nodes_.insert(node);
    domains_.insert({node, std::move(domain)});
    for (const auto& p : function.params()) edges_.insert({p, node});
    functions_.insert({node, std::move(function)});
    return *this;
}

namespace {

// Kahn's algorithm over the node-name order described in model.hpp.
// Returns the order, or on a cycle the leftover nodes via `cycle_out`.
std::optional<std::vector<NodeId>> kahn_order(const Sfm& model,
                                              std::vector<std::string>* cycle_out) {
    std::map<NodeId, std::size_t> indegree;
    for (const auto& u : model.nodes()) indegree[u] = 0;
    for (const auto& [src, dst] : model.edges()) {
        if (indegree.count(dst) && indegree.count(src)) ++indegree[dst];
    }

    std::deque<NodeId> ready;
    for (const auto& [u, deg] : indegree) {
        if (deg == 0) ready.push_back(u);  // map order == name order
    }

    std::vector<NodeId> order;
    order.reserve(model.nodes().size());
    while (!ready.empty()) {
        NodeId u = ready.front();
        ready.pop_front();
        order.push_back(u);
        for (const auto& c : model.children(u)) {
            if (!indegree.count(c)) continue;
            if (--indegree[c] == 0) ready.push_back(c);
        }
    }

    if (order.size() == model.nodes().size()) return order;

    if (cycle_out) {
        // Every leftover node has a leftover parent; walking parents must
        // revisit a node, which closes a cycle.
        std::set<NodeId> leftover;
        for (const auto& [u, deg] : indegree) {
            if (deg > 0) leftover.insert(u);
        }
        std::vector<NodeId> walk{*leftover.begin()};
        std::map<NodeId, std::size_t> seen{{walk[0], 0}};
        for (;;) {
            NodeId parent;
            for (const auto& p : model.parents(walk.back())) {
                if (leftover.count(p)) {
                    parent = p;
                    break;
                }
            }
            auto it = seen.find(parent);
            if (it != seen.end()) {
                // walk[i + 1] is a parent of walk[i], so the edge direction
                // runs back-to-front; the forward cycle is the repeated
                // segment reversed, entered from the repeated node.
                std::vector<NodeId> cycle{parent};
                for (std::size_t i = walk.size(); i-- > it->second;) {
                    cycle.push_back(walk[i]);
                }
                // Canonical rotation: start the cycle at its smallest node.
                cycle.pop_back();
                auto min_it = std::min_element(cycle.begin(), cycle.end());
                std::rotate(cycle.begin(), min_it, cycle.end());
                cycle.push_back(cycle.front());
                cycle_out->clear();
                for (const auto& n : cycle) cycle_out->push_back(n.name);
                break;
            }
            seen[parent] = walk.size();
            walk.push_back(parent);
        }
    }
    return std::nullopt;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

// Iterate the Cartesian product of the parent domains, invoking fn with each
// parent valuation.  Parent domains must be finite.
template <typename Fn>
void for_each_parent_tuple(const Sfm& model, const std::vector<NodeId>& params, Fn fn) {
    std::vector<const std::vector<Value>*> columns;
    for (const auto& p : params) columns.push_back(&model.domain(p).values());
    std::vector<std::size_t> idx(params.size(), 0);
    for (;;) {
        Assignment tuple;
        for (std::size_t i = 0; i < params.size(); ++i) {
            tuple.set(params[i], (*columns[i])[idx[i]]);
        }
        fn(tuple);
        std::size_t i = params.size();
        while (i > 0) {
            --i;
            if (++idx[i] < columns[i]->size()) break;
            idx[i] = 0;
            if (i == 0) return;
        }
        if (params.empty()) return;
    }
}

} // namespace

ValidationReport validate(const Sfm& model) {
    ValidationReport report;
    auto flag = [&](std::string message) {
        report.violations.push_back({std::move(message)});
    };

    for (const auto& u : model.nodes()) {
        if (u.name.empty()) flag("node with empty name");
        if (!model.domains().count(u)) flag("no domain for node " + u.name);
    }
    for (const auto& [u, d] : model.domains()) {
        if (!model.nodes().count(u)) flag("domain for undeclared node " + u.name);
    }
    bool edges_ok = true;
    for (const auto& [src, dst] : model.edges()) {
        if (!model.nodes().count(src) || !model.nodes().count(dst)) {
            flag("edge (" + src.name + ", " + dst.name + ") references undeclared node");
            edges_ok = false;
        }
    }

    std::vector<std::string> cycle;
    auto order = kahn_order(model, &cycle);
    if (!order) flag("cycle: " + join(cycle, ","));

    for (const auto& u : model.nodes()) {
        bool exo = model.is_exo(u);
        bool has_fn = model.has_function(u);
        if (exo && has_fn) flag("function defined for exo-node " + u.name);
        if (!exo && !has_fn) flag("no function for endo-node " + u.name);
    }
    for (const auto& [u, f] : model.functions()) {
        if (!model.nodes().count(u)) {
            flag("function for undeclared node " + u.name);
            continue;
        }
        if (!edges_ok) continue;
        std::vector<NodeId> parents = model.parents(u);
        std::set<NodeId> parent_set(parents.begin(), parents.end());
        std::set<NodeId> param_set(f.params().begin(), f.params().end());
        if (parent_set != param_set) {
            flag("declared parameters of " + u.name + " do not match its parents");
            continue;
        }
        bool domains_known = model.domains().count(u) != 0;
        for (const auto& p : f.params()) {
            if (!model.domains().count(p)) domains_known = false;
        }
        if (!domains_known) continue;

        if (f.kind() == StructuralFunction::Kind::expr) {
            std::set<NodeId> refs;
            collect_parent_refs(*f.expression(), refs);
            for (const auto& r : refs) {
                if (!param_set.count(r)) {
                    flag("expression of " + u.name + " references undeclared parent " +
                         r.name);
                }
            }
            continue;
        }

        // Table checks: finite parent domains, left-totality, no stray rows,
        // outputs inside the child domain.
        bool finite = true;
        for (const auto& p : f.params()) {
            if (!model.domain(p).is_finite()) {
                flag("table over non-enumerable parent domain at " + u.name);
                finite = false;
            }
        }
        if (!finite) continue;

        std::set<std::vector<Value>> expected;
        for_each_parent_tuple(model, f.params(), [&](const Assignment& tuple) {
            std::vector<Value> key;
            for (const auto& p : f.params()) key.push_back(tuple.at(p));
            expected.insert(std::move(key));
        });
        bool total = true;
        for (const auto& key : expected) {
            if (!f.rows().count(key)) total = false;
        }
        if (!total) flag("table not left-total at " + u.name);
        for (const auto& [key, value] : f.rows()) {
            if (!expected.count(key)) {
                flag("table row outside parent domains at " + u.name);
            }
            if (!model.domain(u).contains(value)) {
                flag("table output " + value.str() + " outside domain of " + u.name);
            }
        }
    }

    if (report.valid()) report.topological_order = std::move(*order);
    return report;
}

std::vector<NodeId> topological_order(const Sfm& model) {
    std::vector<std::string> cycle;
    auto order = kahn_order(model, &cycle);
    if (!order) {
        throw CycleError("cycle: " + join(cycle, ","), cycle);
    }
    return *order;
}

bool satisfies(const Sfm& model, const Assignment& world) {
    for (const auto& u : model.nodes()) {
        if (!world.contains(u)) {
            throw PreconditionError("world is missing node " + u.name);
        }
        if (!model.domain(u).contains(world.at(u))) {
            throw PreconditionError("value " + world.at(u).str() +
                                    " outside domain of " + u.name);
        }
    }
    for (const auto& [u, v] : world) {
        if (!model.nodes().count(u)) {
            throw PreconditionError("world binds undeclared node " + u.name);
        }
    }
    for (const auto& [u, f] : model.functions()) {
        if (!(world.at(u) == f.apply(world))) return false;
    }
    return true;
}

} // namespace sfm
