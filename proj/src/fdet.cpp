#include "sfm/fdet.hpp"

#include "sfm/errors.hpp"

namespace sfm {

namespace {

// Iterates the Cartesian product of the given nodes' finite domains.
template <typename Fn>
void for_each_combination(const std::vector<NodeId>& nodes,
                          const std::map<NodeId, Domain>& domains, Fn fn) {
    std::vector<const std::vector<Value>*> columns;
    for (const auto& u : nodes) columns.push_back(&domains.at(u).values());
    std::vector<std::size_t> idx(nodes.size(), 0);
    for (;;) {
        Assignment a;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            a.set(nodes[i], (*columns[i])[idx[i]]);
        }
        fn(a);
        std::size_t i = nodes.size();
        for (;;) {
            if (i == 0) return;
            --i;
            if (++idx[i] < columns[i]->size()) break;
            idx[i] = 0;
        }
    }
}

} // namespace

FDet::FDet(std::set<NodeId> sources, std::set<NodeId> targets,
           std::map<NodeId, Domain> domains, Rows rows)
    : sources_(std::move(sources)), targets_(std::move(targets)),
      domains_(std::move(domains)), rows_(std::move(rows)) {
    if (targets_.empty()) throw PreconditionError("determination with no targets");
    for (const auto& u : sources_) {
        auto it = domains_.find(u);
        if (it == domains_.end()) throw PreconditionError("no domain for source " + u.name);
        if (!it->second.is_finite()) {
            throw PreconditionError("source " + u.name + " has a non-enumerable domain");
        }
    }
    for (const auto& u : targets_) {
        auto it = domains_.find(u);
        if (it == domains_.end()) throw PreconditionError("no domain for target " + u.name);
        if (!it->second.is_finite()) {
            throw PreconditionError("target " + u.name + " has a non-enumerable domain");
        }
    }

    std::vector<NodeId> source_list(sources_.begin(), sources_.end());
    std::size_t expected = 0;
    for_each_combination(source_list, domains_, [&](const Assignment& src) {
        ++expected;
        if (!rows_.count(src)) {
            throw PreconditionError("determination is not left-total: no row for " +
                                    src.str());
        }
    });
    if (rows_.size() != expected) {
        throw PreconditionError("determination has rows outside the source product");
    }
    for (const auto& [src, dst] : rows_) {
        if (dst.keys() != targets_) {
            throw PreconditionError("row for " + src.str() +
                                    " does not bind exactly the targets");
        }
        for (const auto& [u, v] : dst) {
            if (!domains_.at(u).contains(v)) {
                throw PreconditionError("row output " + v.str() + " outside domain of " +
                                        u.name);
            }
        }
    }
}

const Assignment& FDet::apply(const Assignment& source_values) const {
    auto it = rows_.find(source_values.restrict_to(sources_));
    if (it == rows_.end()) {
        throw PreconditionError("no row for source assignment " + source_values.str());
    }
    return it->second;
}

std::vector<Sfm> construct_intersection(const std::vector<FDet>& fdets) {
    std::vector<Sfm> parts;
    for (const FDet& fdet : fdets) {
        if (fdet.sources().empty()) {
            throw PreconditionError("constant determination (no sources) has no model form");
        }
        for (const auto& y : fdet.targets()) {
            if (fdet.sources().count(y)) {
                throw PreconditionError("determination is cyclic at node " + y.name);
            }
        }

        std::set<NodeId> nodes = fdet.sources();
        nodes.insert(fdet.targets().begin(), fdet.targets().end());
        std::set<Edge> edges;
        std::map<NodeId, Domain> domains;
        std::map<NodeId, StructuralFunction> functions;
        for (const auto& u : nodes) domains.insert({u, fdet.domains().at(u)});

        std::vector<NodeId> params(fdet.sources().begin(), fdet.sources().end());
        for (const auto& y : fdet.targets()) {
            for (const auto& x : fdet.sources()) edges.insert({x, y});
            StructuralFunction::Rows rows;
            for (const auto& [src, dst] : fdet.rows()) {
                std::vector<Value> key;
                for (const auto& x : params) key.push_back(src.at(x));
                rows.insert({std::move(key), dst.at(y)});
            }
            functions.insert({y, StructuralFunction::table(params, std::move(rows))});
        }
        parts.push_back(Sfm(std::move(nodes), std::move(edges), std::move(domains),
                            std::move(functions)));
    }
    return parts;
}

Team intersection_team(const std::vector<Sfm>& parts,
                       const std::map<NodeId, Domain>& universe_domains,
                       std::uint64_t budget) {
    std::uint64_t combinations = 1;
    for (const auto& [u, d] : universe_domains) {
        if (!d.is_finite()) {
            throw UnsupportedEnumerationError("universe domain of " + u.name +
                                              " is not enumerable");
        }
        std::uint64_t size = d.size();
        if (combinations > budget / size) {
            throw BudgetExceededError("enumeration budget exceeded");
        }
        combinations *= size;
    }
    for (const Sfm& part : parts) {
        for (const auto& u : part.nodes()) {
            auto it = universe_domains.find(u);
            if (it == universe_domains.end()) {
                throw PreconditionError("universe has no domain for node " + u.name);
            }
            if (!(part.domain(u) == it->second)) {
                throw PreconditionError("universe and part disagree on the domain of " +
                                        u.name);
            }
        }
    }

    std::vector<NodeId> nodes;
    for (const auto& [u, d] : universe_domains) nodes.push_back(u);
    Team team;
    for_each_combination(nodes, universe_domains, [&](const Assignment& candidate) {
        for (const Sfm& part : parts) {
            if (!satisfies(part, candidate.restrict_to(part.nodes()))) return;
        }
        team.insert(candidate);
    });
    return team;
}

} // namespace sfm
