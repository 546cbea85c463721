#include "sfm/team.hpp"

#include <map>

#include "sfm/errors.hpp"
#include "sfm/infer.hpp"

namespace sfm {

Team::Team(std::set<Assignment> members) {
    for (const auto& m : members) insert(m);
}

void Team::insert(const Assignment& member) {
    if (!members_.empty() && member.keys() != members_.begin()->keys()) {
        throw PreconditionError("team members must share one node set");
    }
    members_.insert(member);
}

std::set<NodeId> Team::keys() const {
    if (members_.empty()) return {};
    return members_.begin()->keys();
}

Team enumerate_team(const Sfm& model, std::uint64_t budget) {
    std::set<NodeId> roots = model.exo_nodes();
    std::uint64_t combinations = 1;
    for (const auto& u : model.nodes()) {
        if (!model.domain(u).is_finite()) {
            throw UnsupportedEnumerationError("cannot enumerate non-enumerable domain of " +
                                              u.name);
        }
    }
    for (const auto& u : roots) {
        std::uint64_t size = model.domain(u).size();
        if (combinations > budget / size) {
            throw BudgetExceededError("enumeration budget exceeded");
        }
        combinations *= size;
    }

    // The model's functions settle every non-root value, so the team is the
    // image of full forward inference over the root combinations.
    std::vector<NodeId> root_list(roots.begin(), roots.end());
    std::vector<std::size_t> idx(root_list.size(), 0);
    Team team;
    for (;;) {
        Assignment exo;
        for (std::size_t i = 0; i < root_list.size(); ++i) {
            exo.set(root_list[i], model.domain(root_list[i]).values()[idx[i]]);
        }
        team.insert(vfi(model, exo).world);
        std::size_t i = root_list.size();
        for (;;) {
            if (i == 0) return team;
            --i;
            if (++idx[i] < model.domain(root_list[i]).size()) break;
            idx[i] = 0;
        }
    }
}

bool is_permitted(const Sfm& model, const Assignment& fragment) {
    for (const auto& [u, v] : fragment) {
        if (!model.nodes().count(u)) {
            throw PreconditionError("fragment binds undeclared node " + u.name);
        }
        if (!model.domain(u).contains(v)) {
            throw PreconditionError("value " + v.str() + " outside domain of " + u.name);
        }
    }
    return !csp_solve(model, fragment, {}, 1).empty();
}

bool fd_holds(const Team& team, const std::set<NodeId>& sources,
              const std::set<NodeId>& targets) {
    std::set<NodeId> keys = team.keys();
    if (!team.empty()) {
        for (const auto& u : sources) {
            if (!keys.count(u)) {
                throw PreconditionError("source node " + u.name + " is not in the team");
            }
        }
        for (const auto& u : targets) {
            if (!keys.count(u)) {
                throw PreconditionError("target node " + u.name + " is not in the team");
            }
        }
    }
    std::map<Assignment, Assignment> image;
    for (const auto& member : team) {
        Assignment src = member.restrict_to(sources);
        Assignment dst = member.restrict_to(targets);
        auto [it, inserted] = image.insert({std::move(src), dst});
        if (!inserted && !(it->second == dst)) return false;
    }
    return true;
}

bool fd_value_holds(const Team& team, const Assignment& source_fragment,
                    const std::set<NodeId>& targets) {
    std::set<NodeId> keys = team.keys();
    for (const auto& [u, v] : source_fragment) {
        if (!keys.count(u)) {
            throw PreconditionError("fragment node " + u.name + " is not in the team");
        }
    }
    for (const auto& u : targets) {
        if (!keys.count(u)) {
            throw PreconditionError("target node " + u.name + " is not in the team");
        }
    }
    bool any = false;
    Assignment witness;
    for (const auto& member : team) {
        if (!member.extends(source_fragment)) continue;
        Assignment dst = member.restrict_to(targets);
        if (!any) {
            any = true;
            witness = std::move(dst);
        } else if (!(witness == dst)) {
            return false;
        }
    }
    if (!any) {
        throw UnpermittedFragmentError("fragment " + source_fragment.str() +
                                       " is not permitted by the team");
    }
    return true;
}

} // namespace sfm
