#pragma once

#include <cstdint>
#include <set>

#include "sfm/model.hpp"

namespace sfm {

/// Set of complete assignments over one shared node set.
class Team {
public:
    Team() = default;
    explicit Team(std::set<Assignment> members);

    void insert(const Assignment& member);
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool contains(const Assignment& member) const { return members_.count(member) != 0; }
    /// Key set shared by all members; empty for the empty team.
    std::set<NodeId> keys() const;

    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    bool operator==(const Team& o) const { return members_ == o.members_; }

private:
    std::set<Assignment> members_;
};

/// All assignments the model permits.  Requires finite domains everywhere;
/// the number of root-node combinations must stay within `budget`.
Team enumerate_team(const Sfm& model, std::uint64_t budget = kDefaultEnumerationBudget);

/// True when some permitted assignment extends `fragment`.  The fragment may
/// bind any nodes; values must lie in their domains.  Requires finite
/// domains (answered by backtracking search, not enumeration).
bool is_permitted(const Sfm& model, const Assignment& fragment);

/// Node-level functional dependency: within `team`, equal source values
/// force equal target values.  Vacuously true for the empty team.
bool fd_holds(const Team& team, const std::set<NodeId>& sources,
              const std::set<NodeId>& targets);

/// Value-level functional dependency: every member extending
/// `source_fragment` agrees on all of `targets`.  Throws
/// UnpermittedFragmentError when no member extends the fragment.
bool fd_value_holds(const Team& team, const Assignment& source_fragment,
                    const std::set<NodeId>& targets);

} // namespace sfm
