#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sfm/assignment.hpp"
#include "sfm/domain.hpp"
#include "sfm/function.hpp"

namespace sfm {

using Edge = std::pair<NodeId, NodeId>;

/// Default cap on the number of assignments an enumeration operation may
/// materialize or scan.
inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000;

/// Structural functional model: a finite directed graph with per-node
/// domains and one structural function per non-root node.  Construction
/// stores the data as given; `validate` reports problems instead of
/// throwing.  Instances are immutable values, so every operation on them is
/// safe to run concurrently.
class Sfm {
public:
    Sfm() = default;
    Sfm(std::set<NodeId> nodes, std::set<Edge> edges,
        std::map<NodeId, Domain> domains,
        std::map<NodeId, StructuralFunction> functions)
        : nodes_(std::move(nodes)), edges_(std::move(edges)),
          domains_(std::move(domains)), functions_(std::move(functions)) {}

    const std::set<NodeId>& nodes() const { return nodes_; }
    const std::set<Edge>& edges() const { return edges_; }
    const std::map<NodeId, Domain>& domains() const { return domains_; }
    const std::map<NodeId, StructuralFunction>& functions() const { return functions_; }

    const Domain& domain(const NodeId& u) const;
    const StructuralFunction& function(const NodeId& u) const;
    bool has_function(const NodeId& u) const { return functions_.count(u) != 0; }

    /// Parents in node-name order.
    std::vector<NodeId> parents(const NodeId& u) const;
    std::vector<NodeId> children(const NodeId& u) const;
    bool is_exo(const NodeId& u) const;
    std::set<NodeId> exo_nodes() const;
    std::set<NodeId> endo_nodes() const;

    /// Ancestors / descendants of `seeds`, including the seeds themselves.
    std::set<NodeId> ancestors_of(const std::set<NodeId>& seeds) const;
    std::set<NodeId> descendants_of(const std::set<NodeId>& seeds) const;

    bool operator==(const Sfm& o) const {
        return nodes_ == o.nodes_ && edges_ == o.edges_ &&
               domains_ == o.domains_ && functions_ == o.functions_;
    }

private:
    std::set<NodeId> nodes_;
    std::set<Edge> edges_;
    std::map<NodeId, Domain> domains_;
    std::map<NodeId, StructuralFunction> functions_;
};

/// Convenience builder: `endo` adds the node, its parent edges, and its
/// function in one step.
class SfmBuilder {
public:
    SfmBuilder& exo(NodeId node, Domain domain);
    SfmBuilder& endo(NodeId node, Domain domain, StructuralFunction function);
    Sfm build() const { return Sfm(nodes_, edges_, domains_, functions_); }

private:
    std::set<NodeId> nodes_;
    std::set<Edge> edges_;
    std::map<NodeId, Domain> domains_;
    std::map<NodeId, StructuralFunction> functions_;
};

struct Violation {
    std::string message;

    bool operator==(const Violation& o) const { return message == o.message; }
};

/// Result of validating a model.  Violations are data, not exceptions.  A
/// valid report carries the model's topological order.
struct ValidationReport {
    std::vector<Violation> violations;
    std::optional<std::vector<NodeId>> topological_order;

    bool valid() const { return violations.empty(); }
};

ValidationReport validate(const Sfm& model);

/// Topological order of a valid model's nodes.  Roots are visited first in
/// name order; a node becomes eligible once all its parents are placed, and
/// simultaneously eligible nodes are queued in name order.  Throws
/// CycleError with a witness path when the graph is cyclic.
std::vector<NodeId> topological_order(const Sfm& model);

/// True when the complete assignment `world` satisfies every structural
/// function.  Throws PreconditionError when `world` is not a complete
/// in-domain assignment over the model's nodes.
bool satisfies(const Sfm& model, const Assignment& world);

} // namespace sfm
