#pragma once

#include <vector>

#include "sfm/team.hpp"

namespace sfm {

/// Functional determination: a left-total, right-unique map from source
/// assignments to target assignments over declared finite domains.
class FDet {
public:
    using Rows = std::map<Assignment, Assignment>;

    /// Validates: domains cover sources and targets and are finite; rows are
    /// keyed by exactly the source-domain product; every row binds exactly
    /// the targets with in-domain values.
    FDet(std::set<NodeId> sources, std::set<NodeId> targets,
         std::map<NodeId, Domain> domains, Rows rows);

    const std::set<NodeId>& sources() const { return sources_; }
    const std::set<NodeId>& targets() const { return targets_; }
    const std::map<NodeId, Domain>& domains() const { return domains_; }
    const Rows& rows() const { return rows_; }

    /// Target assignment for one source assignment.
    const Assignment& apply(const Assignment& source_values) const;

private:
    std::set<NodeId> sources_;
    std::set<NodeId> targets_;
    std::map<NodeId, Domain> domains_;
    Rows rows_;
};

/// One model per determination: sources become roots, each target gets a
/// table projecting the map onto it.  Errors: a target that is also a source
/// (the edge set would be cyclic) and sourceless (constant) determinations.
std::vector<Sfm> construct_intersection(const std::vector<FDet>& fdets);

/// Assignments over the universe that satisfy every part, by filtering the
/// full Cartesian product of `universe_domains`.  Each part's nodes must be
/// covered by the universe with equal domains.
Team intersection_team(const std::vector<Sfm>& parts,
                       const std::map<NodeId, Domain>& universe_domains,
                       std::uint64_t budget = kDefaultEnumerationBudget);

} // namespace sfm
