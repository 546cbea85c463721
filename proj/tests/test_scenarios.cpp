#include "doctest.h"

#include "sfm/dsl.hpp"
#include "sfm/errors.hpp"
#include "sfm/team.hpp"

using namespace sfm;

namespace {

const char* kDisconnectedPreemption = R"(
model {
  node Assassin1 exo domain { 0, 1 }
  node Assassin2 exo domain { 0, 1 }
  node EarlyDeath endo parents (Assassin1) domain { 0, 1 } expr Assassin1
  node LateDeath endo parents (EarlyDeath, Assassin2) domain { 0, 1 } expr EarlyDeath | Assassin2
}
actual { Assassin1: 1, Assassin2: 1, EarlyDeath: 1, LateDeath: 1 }
tweak { Assassin1: 0 }
)";

} // namespace

TEST_CASE("a tweak scenario runs to its canonical sentence") {
    dsl::ScenarioDoc doc = dsl::parse_scenario(kDisconnectedPreemption);
    dsl::ScenarioResult r = dsl::run_scenario(doc);
    CHECK(r.kind == dsl::ScenarioKind::contrast_tweak);
    REQUIRE(r.utterance.has_value());
    CHECK(r.rendered == "{Assassin1:1} causes {EarlyDeath:1}");
    CHECK_FALSE(r.passed.has_value());

    SUBCASE("a matching expectation passes") {
        dsl::ScenarioDoc with = dsl::parse_scenario(
            std::string(kDisconnectedPreemption) +
            "expect cause { Assassin1: 1 } effect { EarlyDeath: 1 }");
        CHECK(dsl::run_scenario(with).passed == true);
    }
    SUBCASE("a mismatched expectation fails without throwing") {
        dsl::ScenarioDoc wrong = dsl::parse_scenario(
            std::string(kDisconnectedPreemption) +
            "expect cause { Assassin1: 1 } effect { LateDeath: 1 }");
        CHECK(dsl::run_scenario(wrong).passed == false);
    }
}

TEST_CASE("a default-world scenario compares two satisfying worlds") {
    dsl::ScenarioDoc doc = dsl::parse_scenario(R"(
model {
  node Assassin exo domain { 0, 1 }
  node Death endo parents (Assassin) domain { 0, 1 } expr Assassin
}
default { Assassin: 0, Death: 0 }
actual { Assassin: 1, Death: 1 }
expect cause { Assassin: 1 } effect { Death: 1 }
)");
    dsl::ScenarioResult r = dsl::run_scenario(doc);
    CHECK(r.kind == dsl::ScenarioKind::contrast_default);
    CHECK(r.rendered == "{Assassin:1} causes {Death:1}");
    CHECK(r.passed == true);
}

TEST_CASE("a forward query scenario answers with the one world") {
    dsl::ScenarioDoc doc = dsl::parse_scenario(R"(
model {
  node Shakespeare exo domain { 0, 1 }
  node Writer2 endo parents (Shakespeare) domain { 0, 1 } expr !Shakespeare
  node Hamlet endo parents (Shakespeare, Writer2) domain { 0, 1 } expr Shakespeare | Writer2
}
vfi { Shakespeare: 0 }
expect answer { Shakespeare: 0, Writer2: 1, Hamlet: 1 }
)");
    dsl::ScenarioResult r = dsl::run_scenario(doc);
    CHECK(r.kind == dsl::ScenarioKind::query_vfi);
    REQUIRE(r.answers.size() == 1);
    CHECK(r.answers[0].at(NodeId("Hamlet")) == Value::integer(1));
    CHECK(r.passed == true);
}

TEST_CASE("a backward query scenario answers with target restrictions") {
    dsl::ScenarioDoc doc = dsl::parse_scenario(R"(
model {
  node Shakespeare exo domain { 0, 1 }
  node Writer2 exo domain { 0, 1 }
  node Hamlet endo parents (Shakespeare, Writer2) domain { 0, 1 } expr Shakespeare | Writer2
}
csp known { Shakespeare: 0, Hamlet: 1 } targets (Writer2)
expect answer { Writer2: 1 }
)");
    dsl::ScenarioResult r = dsl::run_scenario(doc);
    CHECK(r.kind == dsl::ScenarioKind::query_csp);
    REQUIRE(r.answers.size() == 1);
    CHECK(r.passed == true);

    SUBCASE("answer order and count both matter") {
        dsl::ScenarioDoc wrong = doc;
        wrong.expected->answers.push_back(wrong.expected->answers[0]);
        CHECK(dsl::run_scenario(wrong).passed == false);
    }
}

TEST_CASE("scenario inputs are validated before running") {
    dsl::ScenarioDoc doc = dsl::parse_scenario(kDisconnectedPreemption);
    doc.actual_world.set(NodeId("LateDeath"), Value::integer(0));
    CHECK_THROWS_AS(dsl::run_scenario(doc), PreconditionError);
}

TEST_CASE("switch circuits realize every boolean function") {
    for (int n = 1; n <= 3; ++n) {
        std::uint64_t functions = 1ull << (1ull << n);
        for (std::uint64_t index = 0; index < functions; ++index) {
            Sfm circuit = dsl::make_switch_circuit(n, index);
            CHECK(circuit.nodes().size() == static_cast<std::size_t>(n) + 1);
            Team team = enumerate_team(circuit);
            CHECK(team.size() == 1ull << n);
            for (const Assignment& w : team) {
                std::uint64_t code = 0;
                for (int i = 1; i <= n; ++i) {
                    code = (code << 1) |
                           static_cast<std::uint64_t>(
                               w.at(NodeId("X" + std::to_string(i))).as_int());
                }
                std::uint64_t bit = (index >> code) & 1;
                CHECK(w.at(NodeId("Y")) ==
                      Value::integer(static_cast<long long>(bit)));
            }
        }
    }
}

TEST_CASE("switch circuit parameters are validated") {
    CHECK_THROWS_AS(dsl::make_switch_circuit(0, 0), PreconditionError);
    CHECK_THROWS_AS(dsl::make_switch_circuit(4, 0), PreconditionError);
    CHECK_THROWS_AS(dsl::make_switch_circuit(1, 4), PreconditionError);
    CHECK_THROWS_AS(dsl::make_switch_circuit(3, 256), PreconditionError);
}
