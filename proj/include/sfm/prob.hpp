#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sfm/infer.hpp"
#include "sfm/model.hpp"

namespace sfm::prob {

struct WeightedValue {
    Value value;
    Rational probability;

    bool operator==(const WeightedValue& o) const {
        return value == o.value && probability == o.probability;
    }
};

/// Finite-support distribution with exact positive probabilities that sum to
/// one.  Support order is the declaration order and drives outcome indexing.
class Distribution {
public:
    explicit Distribution(std::vector<WeightedValue> support);

    const std::vector<WeightedValue>& support() const { return support_; }
    std::size_t size() const { return support_.size(); }

    bool operator==(const Distribution& o) const { return support_ == o.support_; }

private:
    std::vector<WeightedValue> support_;
};

/// A named source of randomness.  Distinct source ids are independent;
/// nodes that share a source id move together (their distributions must
/// assign the same probability vector).
struct RandomValue {
    std::string source_id;
    Distribution dist;
};

/// One realization choice per source id: an index into the support.
struct Outcome {
    std::map<std::string, std::size_t> coordinates;
};

/// A model extended with randomness.  The random node set is downward
/// closed: randomness is contagious and flows down, so everything reachable
/// from a random node is itself marked random.  Random values attach to root
/// nodes only; non-root nodes receive randomness through their parents.
class ProbSfm {
public:
    const Sfm& base() const { return base_; }
    const std::set<NodeId>& random_nodes() const { return random_nodes_; }
    const std::map<NodeId, RandomValue>& root_distributions() const {
        return root_distributions_;
    }

private:
    friend ProbSfm extend(const Sfm&, std::set<NodeId>, std::map<NodeId, RandomValue>);

    Sfm base_;
    std::set<NodeId> random_nodes_;
    std::map<NodeId, RandomValue> root_distributions_;
};

/// Validates and builds the extension.  Errors: an invalid base; a random
/// node with a descendant outside the random set (named); a random node with
/// a non-enumerable domain; a distribution on a non-random or non-root node;
/// support values outside the node's domain; source ids shared between
/// distributions with different probability vectors.
ProbSfm extend(const Sfm& base, std::set<NodeId> random_nodes,
               std::map<NodeId, RandomValue> root_distributions);

/// World produced by one outcome: distributed roots take the support value
/// at their source's coordinate, remaining roots take `root_choice`, and the
/// rest follows by forward inference.
Assignment realize(const ProbSfm& model, const Assignment& root_choice,
                   const Outcome& outcome);

/// Exact distribution over worlds, by enumerating all outcome combinations
/// of the distinct sources.  Probabilities are exact rationals summing to 1.
std::map<Assignment, Rational> push_forward(
    const ProbSfm& model, const Assignment& root_choice,
    std::uint64_t budget = kDefaultEnumerationBudget);

struct SampleStats {
    std::map<Assignment, long long> counts;
    long long draws{0};
};

/// Seeded deterministic sampling: draw `n` outcomes and realize each.  The
/// generator is counter-based and keyed by (seed, source id, draw index), so
/// results are reproducible across runs and platforms.
SampleStats sample(const ProbSfm& model, const Assignment& root_choice,
                   std::uint64_t seed, long long n);

/// Conditional probability table: distributions over one node's values,
/// keyed by parent-value tuples in `params` order.
struct Cpt {
    std::vector<NodeId> params;
    std::map<std::vector<Value>, Distribution> rows;
};

/// Discrete Bayesian network: a finite DAG with one CPT per node (root
/// nodes carry a single-row CPT over the empty tuple).
class BayesNet {
public:
    BayesNet(std::set<NodeId> nodes, std::set<Edge> edges,
             std::map<NodeId, Domain> domains, std::map<NodeId, Cpt> cpts);

    const std::set<NodeId>& nodes() const { return nodes_; }
    const std::set<Edge>& edges() const { return edges_; }
    const std::map<NodeId, Domain>& domains() const { return domains_; }
    const std::map<NodeId, Cpt>& cpts() const { return cpts_; }

private:
    std::set<NodeId> nodes_;
    std::set<Edge> edges_;
    std::map<NodeId, Domain> domains_;
    std::map<NodeId, Cpt> cpts_;
};

struct BnImport {
    ProbSfm model;
    /// Noise root attached to each network node.
    std::map<NodeId, NodeId> noise_of;
};

/// Rewrites a Bayesian network as a functional model: every network node
/// gains one fresh uniform noise root, and its function inverts the CPT
/// row's cumulative distribution as a step function over [0, 1).  The noise
/// domain is the coarsest partition of [0, 1) at the CPT's cumulative
/// breakpoints (intervals are closed on the left, open on the right, in CPT
/// row value order), each interval weighted by its exact length.  The
/// conditionals implied by the result equal the CPT rows exactly.
BnImport import_bayes_net(const BayesNet& bn);

} // namespace sfm::prob
