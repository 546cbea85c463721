#include "sfm/prob.hpp"

#include <algorithm>

#include "sfm/errors.hpp"

namespace sfm::prob {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Counter-based generator: one independent 53-bit draw per
// (seed, source, index) triple.
std::uint64_t draw53(std::uint64_t seed, const std::string& source, long long index) {
    std::uint64_t h = splitmix64(splitmix64(seed) ^ fnv1a(source));
    return splitmix64(h + static_cast<std::uint64_t>(index)) >> 11;
}

// True when r / 2^53 < threshold, exactly.
bool below(std::uint64_t r, const Rational& threshold) {
    unsigned __int128 lhs = static_cast<unsigned __int128>(r) *
                            static_cast<unsigned __int128>(threshold.den());
    unsigned __int128 rhs = static_cast<unsigned __int128>(threshold.num()) << 53;
    return lhs < rhs;
}

std::size_t pick_index(const Distribution& dist, std::uint64_t r53) {
    Rational cum(0);
    for (std::size_t k = 0; k < dist.support().size(); ++k) {
        cum += dist.support()[k].probability;
        if (below(r53, cum)) return k;
    }
    return dist.support().size() - 1;  // cum == 1 makes this unreachable
}

std::vector<Rational> probability_vector(const Distribution& dist) {
    std::vector<Rational> out;
    for (const auto& wv : dist.support()) out.push_back(wv.probability);
    return out;
}

} // namespace

Distribution::Distribution(std::vector<WeightedValue> support)
    : support_(std::move(support)) {
    if (support_.empty()) throw PreconditionError("distribution with empty support");
    Rational total(0);
    for (std::size_t i = 0; i < support_.size(); ++i) {
        if (!(support_[i].probability > Rational(0))) {
            throw PreconditionError("distribution probability must be positive");
        }
        for (std::size_t j = i + 1; j < support_.size(); ++j) {
            if (support_[i].value == support_[j].value) {
                throw PreconditionError("duplicate support value " + support_[i].value.str());
            }
        }
        total += support_[i].probability;
    }
    if (!(total == Rational(1))) {
        throw PreconditionError("distribution probabilities sum to " + total.str() +
                                ", not 1");
    }
}

ProbSfm extend(const Sfm& base, std::set<NodeId> random_nodes,
               std::map<NodeId, RandomValue> root_distributions) {
    if (!validate(base).valid()) {
        throw PreconditionError("base model does not validate");
    }
    std::set<NodeId> roots = base.exo_nodes();
    for (const auto& u : random_nodes) {
        if (!base.nodes().count(u)) {
            throw PreconditionError("random node " + u.name + " is not in the model");
        }
        if (!base.domain(u).is_finite()) {
            throw PreconditionError("random node " + u.name +
                                    " has a non-enumerable domain");
        }
        for (const auto& c : base.children(u)) {
            if (!random_nodes.count(c)) {
                throw PreconditionError("node " + c.name + " is downstream of random node " +
                                        u.name + " but not in the random set");
            }
        }
    }
    std::map<std::string, std::vector<Rational>> source_probs;
    for (const auto& [u, rv] : root_distributions) {
        if (!random_nodes.count(u)) {
            throw PreconditionError("distribution on non-random node " + u.name);
        }
        if (!roots.count(u)) {
            throw PreconditionError("distribution on non-root node " + u.name +
                                    "; non-root nodes receive randomness through their parents");
        }
        if (rv.source_id.empty()) {
            throw PreconditionError("empty source id on node " + u.name);
        }
        for (const auto& wv : rv.dist.support()) {
            if (!base.domain(u).contains(wv.value)) {
                throw PreconditionError("support value " + wv.value.str() +
                                        " outside domain of " + u.name);
            }
        }
        auto [it, inserted] = source_probs.insert({rv.source_id,
                                                   probability_vector(rv.dist)});
        if (!inserted && it->second != probability_vector(rv.dist)) {
            throw PreconditionError("source " + rv.source_id +
                                    " is shared by distributions with different probabilities");
        }
    }

    ProbSfm model;
    model.base_ = base;
    model.random_nodes_ = std::move(random_nodes);
    model.root_distributions_ = std::move(root_distributions);
    return model;
}

Assignment realize(const ProbSfm& model, const Assignment& root_choice,
                   const Outcome& outcome) {
    std::set<NodeId> roots = model.base().exo_nodes();
    for (const auto& [u, v] : root_choice) {
        if (model.root_distributions().count(u)) {
            throw PreconditionError("node " + u.name +
                                    " is random; its value comes from the outcome");
        }
    }
    Assignment exo = root_choice;
    for (const auto& [u, rv] : model.root_distributions()) {
        auto it = outcome.coordinates.find(rv.source_id);
        if (it == outcome.coordinates.end()) {
            throw PreconditionError("outcome has no coordinate for source " + rv.source_id);
        }
        if (it->second >= rv.dist.size()) {
            throw PreconditionError("coordinate for source " + rv.source_id +
                                    " is outside the support");
        }
        exo.set(u, rv.dist.support()[it->second].value);
    }
    return vfi(model.base(), exo).world;
}

namespace {

// Distinct sources in id order, each with its support size and per-index
// probabilities (equal across all nodes sharing the source).
struct SourceAxis {
    std::string id;
    std::size_t size;
    std::vector<Rational> probs;
};

std::vector<SourceAxis> source_axes(const ProbSfm& model) {
    std::map<std::string, std::vector<Rational>> seen;
    for (const auto& [u, rv] : model.root_distributions()) {
        seen.insert({rv.source_id, probability_vector(rv.dist)});
    }
    std::vector<SourceAxis> axes;
    for (const auto& [id, probs] : seen) {
        axes.push_back({id, probs.size(), probs});
    }
    return axes;
}

} // namespace

std::map<Assignment, Rational> push_forward(const ProbSfm& model,
                                            const Assignment& root_choice,
                                            std::uint64_t budget) {
    std::vector<SourceAxis> axes = source_axes(model);
    std::uint64_t combinations = 1;
    for (const auto& axis : axes) {
        if (combinations > budget / axis.size) {
            throw BudgetExceededError("enumeration budget exceeded");
        }
        combinations *= axis.size;
    }

    std::map<Assignment, Rational> out;
    std::vector<std::size_t> idx(axes.size(), 0);
    for (;;) {
        Outcome outcome;
        Rational p(1);
        for (std::size_t i = 0; i < axes.size(); ++i) {
            outcome.coordinates[axes[i].id] = idx[i];
            p *= axes[i].probs[idx[i]];
        }
        Assignment world = realize(model, root_choice, outcome);
        auto [it, inserted] = out.insert({std::move(world), p});
        if (!inserted) it->second += p;

        std::size_t i = axes.size();
        for (;;) {
            if (i == 0) {
                Rational total(0);
                for (const auto& [w, q] : out) total += q;
                if (!(total == Rational(1))) {
                    throw SfmError("outcome probabilities sum to " + total.str());
                }
                return out;
            }
            --i;
            if (++idx[i] < axes[i].size) break;
            idx[i] = 0;
        }
    }
}

SampleStats sample(const ProbSfm& model, const Assignment& root_choice,
                   std::uint64_t seed, long long n) {
    if (n < 0) throw PreconditionError("sample count must be non-negative");
    std::vector<SourceAxis> axes = source_axes(model);
    std::map<std::string, Distribution> dist_of;
    for (const auto& [u, rv] : model.root_distributions()) {
        dist_of.insert({rv.source_id, rv.dist});
    }

    SampleStats stats;
    stats.draws = n;
    for (long long i = 0; i < n; ++i) {
        Outcome outcome;
        for (const auto& axis : axes) {
            std::uint64_t r = draw53(seed, axis.id, i);
            outcome.coordinates[axis.id] = pick_index(dist_of.at(axis.id), r);
        }
        ++stats.counts[realize(model, root_choice, outcome)];
    }
    return stats;
}

BayesNet::BayesNet(std::set<NodeId> nodes, std::set<Edge> edges,
                   std::map<NodeId, Domain> domains, std::map<NodeId, Cpt> cpts)
    : nodes_(std::move(nodes)), edges_(std::move(edges)),
      domains_(std::move(domains)), cpts_(std::move(cpts)) {
    Sfm graph(nodes_, edges_, {}, {});
    topological_order(graph);  // throws CycleError on a cyclic network

    for (const auto& u : nodes_) {
        auto dit = domains_.find(u);
        if (dit == domains_.end()) {
            throw PreconditionError("no domain for network node " + u.name);
        }
        if (!dit->second.is_finite()) {
            throw PreconditionError("network node " + u.name +
                                    " has a non-enumerable domain");
        }
        auto cit = cpts_.find(u);
        if (cit == cpts_.end()) {
            throw PreconditionError("no probability table for network node " + u.name);
        }
        const Cpt& cpt = cit->second;
        std::vector<NodeId> parents = graph.parents(u);
        std::set<NodeId> parent_set(parents.begin(), parents.end());
        std::set<NodeId> param_set(cpt.params.begin(), cpt.params.end());
        if (parent_set != param_set) {
            throw PreconditionError("probability table parents of " + u.name +
                                    " do not match its edges");
        }

        std::uint64_t expected = 1;
        for (const auto& p : cpt.params) expected *= domains_.at(p).size();
        if (cpt.rows.size() != expected) {
            throw PreconditionError("probability table of " + u.name +
                                    " does not cover the parent product exactly");
        }
        for (const auto& [tuple, dist] : cpt.rows) {
            if (tuple.size() != cpt.params.size()) {
                throw PreconditionError("row arity mismatch in probability table of " +
                                        u.name);
            }
            for (std::size_t i = 0; i < tuple.size(); ++i) {
                if (!domains_.at(cpt.params[i]).contains(tuple[i])) {
                    throw PreconditionError("row key value " + tuple[i].str() +
                                            " outside domain of " + cpt.params[i].name);
                }
            }
            for (const auto& wv : dist.support()) {
                if (!dit->second.contains(wv.value)) {
                    throw PreconditionError("probability table value " + wv.value.str() +
                                            " outside domain of " + u.name);
                }
            }
        }
    }
}

namespace {

// Value of the CPT row's step function on the interval starting at `left`.
Value step_value(const Distribution& row, const Rational& left) {
    Rational cum(0);
    for (const auto& wv : row.support()) {
        cum += wv.probability;
        if (left < cum) return wv.value;
    }
    return row.support().back().value;
}

} // namespace

BnImport import_bayes_net(const BayesNet& bn) {
    std::set<NodeId> nodes = bn.nodes();
    std::set<Edge> edges = bn.edges();
    std::map<NodeId, Domain> domains = bn.domains();
    std::map<NodeId, StructuralFunction> functions;
    std::map<NodeId, RandomValue> root_distributions;
    std::map<NodeId, NodeId> noise_of;

    for (const auto& y : bn.nodes()) {
        NodeId noise("U_" + y.name);
        while (nodes.count(noise)) noise = NodeId(noise.name + "_");

        const Cpt& cpt = bn.cpts().at(y);

        // Coarsest partition of [0, 1) on which every row's inverse-CDF step
        // function is constant: cut at all cumulative sums of all rows.
        std::set<Rational> cuts{Rational(0)};
        for (const auto& [tuple, dist] : cpt.rows) {
            Rational cum(0);
            for (std::size_t k = 0; k + 1 < dist.support().size(); ++k) {
                cum += dist.support()[k].probability;
                cuts.insert(cum);
            }
        }
        std::vector<Rational> lefts(cuts.begin(), cuts.end());
        std::vector<Value> noise_values;
        std::vector<WeightedValue> noise_weights;
        for (std::size_t i = 0; i < lefts.size(); ++i) {
            Rational right = i + 1 < lefts.size() ? lefts[i + 1] : Rational(1);
            noise_values.push_back(Value::rational(lefts[i]));
            noise_weights.push_back({Value::rational(lefts[i]), right - lefts[i]});
        }

        nodes.insert(noise);
        edges.insert({noise, y});
        domains.insert({noise, Domain::finite(noise_values)});
        root_distributions.insert({noise, RandomValue{noise.name,
                                                      Distribution(noise_weights)}});
        noise_of.insert({y, noise});

        // The node's function: look up the CPT row for the parents, then map
        // the noise interval through that row's step function.
        std::vector<NodeId> params(cpt.params);
        params.push_back(noise);
        std::sort(params.begin(), params.end());
        StructuralFunction::Rows rows;
        for (const auto& [tuple, dist] : cpt.rows) {
            Assignment parent_values;
            for (std::size_t i = 0; i < cpt.params.size(); ++i) {
                parent_values.set(cpt.params[i], tuple[i]);
            }
            for (std::size_t i = 0; i < lefts.size(); ++i) {
                parent_values.set(noise, noise_values[i]);
                std::vector<Value> key;
                for (const auto& p : params) key.push_back(parent_values.at(p));
                rows.insert({std::move(key), step_value(dist, lefts[i])});
            }
        }
        functions.insert({y, StructuralFunction::table(std::move(params),
                                                       std::move(rows))});
    }

    Sfm base(std::move(nodes), std::move(edges), std::move(domains),
             std::move(functions));
    BnImport result{extend(base, base.nodes(), std::move(root_distributions)),
                    std::move(noise_of)};
    return result;
}

} // namespace sfm::prob
