// Acceptance gate: one line per criterion, exit 0 only when all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "sfm/bench.hpp"
#include "sfm/dsl.hpp"
#include "sfm/errors.hpp"
#include "sfm/expr.hpp"
#include "sfm/fdet.hpp"
#include "sfm/gmt.hpp"
#include "sfm/infer.hpp"
#include "sfm/prob.hpp"
#include "sfm/team.hpp"
#include "support/oracles.hpp"

using namespace sfm;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

Domain bits() { return Domain::finite({Value::integer(0), Value::integer(1)}); }

Outcome golden_corpus() {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(SFM_CORPUS_DIR)) {
        if (entry.path().extension() == ".scn") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.size() != 24) {
        return {false, "expected 24 scenario files, found " +
                           std::to_string(files.size())};
    }
    auto start = std::chrono::steady_clock::now();
    int passed = 0;
    for (const auto& file : files) {
        dsl::ScenarioDoc doc = dsl::load_scenario_file(file);
        if (!doc.expected.has_value()) {
            return {false, file.filename().string() + " carries no expectation"};
        }
        dsl::ScenarioResult r = dsl::run_scenario(doc);
        if (r.passed != true) {
            return {false, file.filename().string() + " mismatched: " + r.rendered};
        }
        ++passed;
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    if (elapsed >= 1000) {
        return {false, "corpus took " + std::to_string(elapsed) + " ms"};
    }
    return {true, std::to_string(passed) + " cases in " +
                      std::to_string(elapsed) + " ms"};
}

Outcome forward_inference_unique() {
    std::mt19937_64 rng(1001);
    for (int round = 0; round < 1000; ++round) {
        Sfm model = sfm::testing::random_model(rng);
        Assignment exo = sfm::testing::random_exo(model, rng);
        Assignment world = vfi(model, exo).world;
        Team team = enumerate_team(model);
        if (!team.contains(world)) {
            return {false, "inferred world is not in the team"};
        }
        std::set<NodeId> roots = model.exo_nodes();
        for (const Assignment& member : team) {
            if (member.restrict_to(roots) == exo && !(member == world)) {
                return {false, "a second world extends the exo-assignment"};
            }
        }
    }
    return {true, "1000 random models, worlds unique"};
}

Outcome change_driven_equivalence() {
    std::mt19937_64 rng(1002);
    for (int round = 0; round < 1000; ++round) {
        Sfm model = sfm::testing::random_model(rng);
        Assignment reference = vfi(model, sfm::testing::random_exo(model, rng)).world;
        Assignment tweak = sfm::testing::random_exo_fragment(model, rng);
        InferResult incremental = cfi(model, reference, tweak);
        InferResult full = vfi(model, reference.restrict_to(model.exo_nodes())
                                          .overlaid_with(tweak));
        if (!(incremental.world == full.world)) {
            return {false, "worlds disagree"};
        }
        if (incremental.total_evals() > full.total_evals()) {
            return {false, "change-driven inference evaluated more than full"};
        }
    }

    SfmBuilder builder;
    builder.exo(NodeId("LightSwitch"), bits());
    builder.exo(NodeId("TVSwitch"), bits());
    builder.endo(NodeId("Light"), bits(),
                 StructuralFunction::expr({NodeId("LightSwitch")},
                                          Expr::parent(NodeId("LightSwitch"))));
    builder.endo(NodeId("TV"), bits(),
                 StructuralFunction::expr({NodeId("TVSwitch")},
                                          Expr::parent(NodeId("TVSwitch"))));
    Sfm two = builder.build();
    Assignment exo;
    exo.set(NodeId("LightSwitch"), Value::integer(1));
    exo.set(NodeId("TVSwitch"), Value::integer(1));
    Assignment reference = vfi(two, exo).world;
    Assignment flip;
    flip.set(NodeId("LightSwitch"), Value::integer(0));
    int incremental = cfi(two, reference, flip).total_evals();
    int full = vfi(two, exo.overlaid_with(flip)).total_evals();
    if (incremental != 1 || full != 2) {
        return {false, "light/TV counts were " + std::to_string(incremental) +
                           " vs " + std::to_string(full)};
    }
    return {true, "1000 random models plus the light/TV counts"};
}

Outcome changes_stay_downstream() {
    std::mt19937_64 rng(1003);
    for (int round = 0; round < 1000; ++round) {
        Sfm model = sfm::testing::random_model(rng);
        Assignment reference = vfi(model, sfm::testing::random_exo(model, rng)).world;
        Assignment tweak = sfm::testing::random_exo_fragment(model, rng);
        Assignment world = cfi(model, reference, tweak).world;

        std::set<NodeId> changed_roots;
        for (const auto& [u, v] : tweak) {
            if (!(reference.at(u) == v)) changed_roots.insert(u);
        }
        std::set<NodeId> reachable = model.descendants_of(changed_roots);
        for (const auto& [u, v] : world) {
            if (!(reference.at(u) == v) && !reachable.count(u)) {
                return {false, "node " + u.name + " changed outside the cone"};
            }
        }
    }
    return {true, "1000 random world pairs stayed inside the cone"};
}

Outcome root_fragments_permitted() {
    std::mt19937_64 rng(1004);
    for (int round = 0; round < 1000; ++round) {
        Sfm model = sfm::testing::random_model(rng);
        if (!is_permitted(model, sfm::testing::random_exo_fragment(model, rng))) {
            return {false, "a root fragment was rejected"};
        }
    }
    return {true, "1000 random root fragments permitted"};
}

Outcome intersection_matches_filter() {
    std::mt19937_64 rng(1005);
    for (int round = 0; round < 200; ++round) {
        sfm::testing::FdetCase c = sfm::testing::random_fdet_case(rng);
        Team got = intersection_team(construct_intersection(c.parts), c.universe);

        std::vector<NodeId> nodes;
        std::vector<std::vector<Value>> values;
        for (const auto& [u, d] : c.universe) {
            nodes.push_back(u);
            values.push_back(d.values());
        }
        Team expected;
        std::vector<std::size_t> idx(nodes.size(), 0);
        for (;;) {
            Assignment w;
            for (std::size_t i = 0; i < nodes.size(); ++i)
                w.set(nodes[i], values[i][idx[i]]);
            bool all = true;
            for (const FDet& f : c.parts) {
                if (!(f.apply(w.restrict_to(f.sources())) ==
                      w.restrict_to(f.targets()))) {
                    all = false;
                    break;
                }
            }
            if (all) expected.insert(w);
            std::size_t i = 0;
            while (i < nodes.size() && ++idx[i] == values[i].size()) idx[i++] = 0;
            if (i == nodes.size()) break;
        }
        if (!(got == expected)) {
            return {false, "intersection team differs from the filtered product"};
        }
    }
    return {true, "200 random determination sets matched"};
}

Outcome witnesses_verify() {
    std::mt19937_64 rng(1006);
    int seen = 0;
    while (seen < 1000) {
        auto [nodes, edges] = sfm::testing::random_digraph(rng);
        if (nodes.empty()) continue;
        ++seen;
        GmtWitness w = gmt_witness(nodes, edges);
        if (w.kind == GmtWitness::Kind::root) {
            if (!nodes.count(w.root)) return {false, "root is not a node"};
            for (const auto& [src, dst] : edges) {
                if (dst == w.root) return {false, "root has an incoming edge"};
            }
        } else {
            if (w.cycle.size() < 2 || !(w.cycle.front() == w.cycle.back())) {
                return {false, "cycle endpoints do not match"};
            }
            for (std::size_t i = 0; i + 1 < w.cycle.size(); ++i) {
                if (!edges.count({w.cycle[i], w.cycle[i + 1]})) {
                    return {false, "cycle uses a non-edge"};
                }
            }
        }
    }
    return {true, "1000 random digraphs verified"};
}

Outcome backward_inference() {
    SfmBuilder builder;
    builder.exo(NodeId("Shakespeare"), bits());
    builder.exo(NodeId("Writer2"), bits());
    builder.endo(NodeId("Hamlet"), bits(),
                 StructuralFunction::expr(
                     {NodeId("Shakespeare"), NodeId("Writer2")},
                     Expr::binary(Expr::Op::or_, Expr::parent(NodeId("Shakespeare")),
                                  Expr::parent(NodeId("Writer2")))));
    Sfm hamlet = builder.build();
    Assignment known;
    known.set(NodeId("Shakespeare"), Value::integer(0));
    known.set(NodeId("Hamlet"), Value::integer(1));
    std::vector<Assignment> answers =
        csp_solve(hamlet, known, {NodeId("Writer2")}, 100);
    Assignment expected_answer;
    expected_answer.set(NodeId("Writer2"), Value::integer(1));
    if (answers.size() != 1 || !(answers[0] == expected_answer)) {
        return {false, "the indicative query did not return [{Writer2:1}]"};
    }

    std::mt19937_64 rng(1008);
    for (int round = 0; round < 200; ++round) {
        Sfm model = sfm::testing::random_model(rng);
        Team team = sfm::testing::brute_force_team(model);
        if (team.empty()) continue;

        std::vector<NodeId> nodes(model.nodes().begin(), model.nodes().end());
        std::set<NodeId> targets{nodes[rng() % nodes.size()]};
        Assignment known_fragment;
        const Assignment& witness = *team.begin();
        for (const NodeId& u : nodes) {
            if (rng() % 3 == 0) known_fragment.set(u, witness.at(u));
        }

        std::set<Assignment> expected;
        for (const Assignment& w : team) {
            if (w.overlaid_with(known_fragment) == w) {
                expected.insert(w.restrict_to(targets));
            }
        }
        std::vector<Assignment> got =
            csp_solve(model, known_fragment, targets, 1000000);
        std::set<Assignment> got_set(got.begin(), got.end());
        if (got_set.size() != got.size() || !(got_set == expected)) {
            return {false, "backward answers differ from the team filter"};
        }
    }
    return {true, "indicative query exact, 200 random models matched"};
}

Outcome probabilistic_import() {
    std::mt19937_64 rng(1009);
    for (int round = 0; round < 100; ++round) {
        prob::BayesNet bn = sfm::testing::random_bayes_net(rng);
        prob::BnImport imported = prob::import_bayes_net(bn);
        std::map<Assignment, Rational> joint =
            prob::push_forward(imported.model, Assignment());

        std::map<Assignment, Rational> marginal;
        for (const auto& [w, pr] : joint) {
            Assignment key = w.restrict_to(bn.nodes());
            auto [it, inserted] = marginal.insert({key, pr});
            if (!inserted) it->second = it->second + pr;
        }
        for (const auto& [u, cpt] : bn.cpts()) {
            for (const auto& [tuple, dist] : cpt.rows) {
                Assignment parents;
                for (std::size_t i = 0; i < cpt.params.size(); ++i)
                    parents.set(cpt.params[i], tuple[i]);
                Rational parent_mass(0, 1);
                std::map<Value, Rational> value_mass;
                for (const auto& [w, pr] : marginal) {
                    if (!(w.overlaid_with(parents) == w)) continue;
                    parent_mass = parent_mass + pr;
                    auto [it, inserted] = value_mass.insert({w.at(u), pr});
                    if (!inserted) it->second = it->second + pr;
                }
                if (parent_mass == Rational(0, 1)) continue;
                for (const auto& wv : dist.support()) {
                    auto it = value_mass.find(wv.value);
                    Rational got =
                        it == value_mass.end() ? Rational(0, 1) : it->second;
                    if (!(got == wv.probability * parent_mass)) {
                        return {false, "conditional of " + u.name +
                                           " differs from its table row"};
                    }
                }
            }
        }
    }

    std::mt19937_64 fixed_rng(1010);
    for (int c = 0; c < 10; ++c) {
        prob::BayesNet bn = sfm::testing::random_bayes_net(fixed_rng);
        prob::BnImport imported = prob::import_bayes_net(bn);
        std::map<Assignment, Rational> exact =
            prob::push_forward(imported.model, Assignment());
        prob::SampleStats stats =
            prob::sample(imported.model, Assignment(), 4242 + c, 100000);
        double tv = 0.0;
        std::map<Assignment, long long> counts;
        for (const auto& [w, n] : stats.counts) counts.insert({w, n});
        for (const auto& [w, pr] : exact) {
            auto it = counts.find(w);
            double freq = it == counts.end()
                              ? 0.0
                              : static_cast<double>(it->second) / stats.draws;
            tv += std::abs(freq - static_cast<double>(pr.num()) / pr.den());
            if (it != counts.end()) counts.erase(it);
        }
        for (const auto& [w, n] : counts) {
            tv += static_cast<double>(n) / stats.draws;
        }
        tv /= 2;
        if (tv > 0.01) {
            return {false, "sampling total variation " + std::to_string(tv)};
        }
    }
    return {true, "100 random networks exact, 10 sampling runs within 0.01"};
}

Outcome parser_totality() {
    for (const auto& entry : fs::directory_iterator(SFM_CORPUS_DIR)) {
        if (entry.path().extension() != ".scn") continue;
        dsl::ScenarioDoc doc = dsl::load_scenario_file(entry.path());
        dsl::ScenarioDoc reparsed = dsl::parse_scenario(dsl::print_scenario(doc));
        if (!(reparsed == doc)) {
            return {false, entry.path().filename().string() +
                               " did not round-trip"};
        }
    }
    for (const auto& entry :
         fs::directory_iterator(fs::path(SFM_CORPUS_DIR) / "models")) {
        Sfm model = dsl::load_model_file(entry.path());
        if (!(dsl::parse_model(dsl::print_model(model)) == model)) {
            return {false, entry.path().filename().string() +
                               " did not round-trip"};
        }
    }

    std::mt19937_64 rng(1011);
    const std::string alphabet =
        "modelnodexparentsdomainexprtable{}(),:->'\"# \t\n0123456789/-+*^&|!<>=";
    for (int round = 0; round < 100000; ++round) {
        std::string text;
        std::size_t len = rng() % 80;
        for (std::size_t i = 0; i < len; ++i) {
            if (rng() % 8 == 0) {
                text += static_cast<char>(rng() % 256);
            } else {
                text += alphabet[rng() % alphabet.size()];
            }
        }
        try {
            dsl::parse_scenario(text);
        } catch (const dsl::ParseException& e) {
            if (e.error().line < 1 || e.error().col < 1) {
                return {false, "parse error without a position"};
            }
        } catch (...) {
            return {false, "parser threw a non-parse exception"};
        }
    }
    return {true, "corpus round-trips, 100000 fuzz inputs handled"};
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"golden corpus reproduces all 24 cause/effect pairs", golden_corpus},
        {"forward inference finds the unique extending world",
         forward_inference_unique},
        {"change-driven inference is equivalent and never costlier",
         change_driven_equivalence},
        {"changes stay inside the tweaked nodes' descendant cone",
         changes_stay_downstream},
        {"every root fragment is permitted", root_fragments_permitted},
        {"intersection teams equal the brute-force product filter",
         intersection_matches_filter},
        {"every digraph yields a verified root-or-cycle witness",
         witnesses_verify},
        {"backward inference is exact and matches the team filter",
         backward_inference},
        {"imported networks keep their conditionals and sample true",
         probabilistic_import},
        {"the parser round-trips and survives fuzzing", parser_totality},
    };

    bool all_ok = true;
    int index = 0;
    for (const Criterion& criterion : criteria) {
        ++index;
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("threw: ") + e.what()};
        }
        all_ok = all_ok && outcome.ok;
        std::printf("%s criterion %d: %s (%s)\n", outcome.ok ? "PASS" : "FAIL",
                    index, criterion.name, outcome.detail.c_str());
    }
    return all_ok ? 0 : 1;
}
