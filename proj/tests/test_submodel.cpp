#include "doctest.h"

#include <random>

#include "sfm/errors.hpp"
#include "sfm/expr.hpp"
#include "sfm/infer.hpp"
#include "sfm/submodel.hpp"
#include "support/oracles.hpp"

using namespace sfm;

namespace {

Domain bits() { return Domain::finite({Value::integer(0), Value::integer(1)}); }

Sfm boulder_model() {
    SfmBuilder builder;
    Domain d = bits();
    builder.exo(NodeId("Boulder"), d);
    builder.endo(NodeId("Dodge"), d,
                 StructuralFunction::expr({NodeId("Boulder")},
                                          Expr::parent(NodeId("Boulder"))));
    builder.endo(NodeId("Survive"), d,
                 StructuralFunction::expr(
                     {NodeId("Boulder"), NodeId("Dodge")},
                     Expr::binary(Expr::Op::or_,
                                  Expr::unary(Expr::Op::not_,
                                              Expr::parent(NodeId("Boulder"))),
                                  Expr::parent(NodeId("Dodge")))));
    return builder.build();
}

/// Light and Object positions pick a Shadow position; two independent tables
/// over tiny symbolic domains, used to exercise composition.
Sfm shadow_part() {
    SfmBuilder builder;
    Domain pos = Domain::finite({Value::symbol("low"), Value::symbol("high")});
    builder.exo(NodeId("Light"), pos);
    builder.exo(NodeId("Object"), pos);
    StructuralFunction::Rows rows;
    for (const char* l : {"low", "high"})
        for (const char* o : {"low", "high"})
            rows[{Value::symbol(l), Value::symbol(o)}] =
                Value::symbol(std::string(l) == o ? "long" : "short");
    builder.endo(NodeId("Shadow"),
                 Domain::finite({Value::symbol("long"), Value::symbol("short")}),
                 StructuralFunction::table({NodeId("Light"), NodeId("Object")},
                                           std::move(rows)));
    return builder.build();
}

Sfm hand_part() {
    SfmBuilder builder;
    Domain pos = Domain::finite({Value::symbol("low"), Value::symbol("high")});
    builder.exo(NodeId("Hand"), pos);
    builder.endo(NodeId("Light"), pos,
                 StructuralFunction::expr({NodeId("Hand")},
                                          Expr::parent(NodeId("Hand"))));
    return builder.build();
}

} // namespace

TEST_CASE("extracting a sub-model re-roots the cut nodes") {
    Sfm model = boulder_model();

    Sfm sub = extract_sub_sfm(model, {NodeId("Boulder"), NodeId("Dodge"),
                                      NodeId("Survive")},
                              {NodeId("Survive")});
    CHECK(sub.exo_nodes() ==
          std::set<NodeId>{NodeId("Boulder"), NodeId("Dodge")});
    CHECK(sub.parents(NodeId("Survive")) ==
          std::vector<NodeId>{NodeId("Boulder"), NodeId("Dodge")});
    CHECK(is_sub_sfm(sub, model));

    Assignment exo;
    exo.set(NodeId("Boulder"), Value::integer(1));
    exo.set(NodeId("Dodge"), Value::integer(0));
    CHECK(vfi(sub, exo).world.at(NodeId("Survive")) == Value::integer(0));

    SUBCASE("keeping every endo-node returns the model itself") {
        Sfm whole = extract_sub_sfm(model, model.nodes(),
                                    {NodeId("Dodge"), NodeId("Survive")});
        CHECK(whole == model);
        CHECK(is_sub_sfm(whole, model));
    }

    SUBCASE("a single node extracts to an isolated root") {
        Sfm lone = extract_sub_sfm(model, {NodeId("Survive")}, {});
        CHECK(lone.nodes() == std::set<NodeId>{NodeId("Survive")});
        CHECK(lone.exo_nodes() == std::set<NodeId>{NodeId("Survive")});
        CHECK(is_sub_sfm(lone, model));
    }

    SUBCASE("invalid keep sets are rejected") {
        CHECK_THROWS_AS(extract_sub_sfm(model, {NodeId("Nope")}, {}),
                        PreconditionError);
        CHECK_THROWS_AS(
            extract_sub_sfm(model, {NodeId("Dodge")}, {NodeId("Dodge")}),
            PreconditionError);
        CHECK_THROWS_AS(
            extract_sub_sfm(model, {NodeId("Boulder")}, {NodeId("Boulder")}),
            PreconditionError);
        CHECK_THROWS_AS(extract_sub_sfm(model, {NodeId("Survive")},
                                        {NodeId("Survive")}),
                        PreconditionError);
    }
}

TEST_CASE("sub-model recognition checks graph, domains, and functions") {
    Sfm model = boulder_model();
    CHECK(is_sub_sfm(model, model));

    SfmBuilder b1;
    b1.exo(NodeId("Boulder"), bits());
    b1.endo(NodeId("Dodge"), bits(),
            StructuralFunction::expr({NodeId("Boulder")},
                                     Expr::parent(NodeId("Boulder"))));
    CHECK(is_sub_sfm(b1.build(), model));

    SfmBuilder foreign;
    foreign.exo(NodeId("Meteor"), bits());
    CHECK_FALSE(is_sub_sfm(foreign.build(), model));

    SfmBuilder wrong_domain;
    wrong_domain.exo(NodeId("Boulder"),
                     Domain::finite({Value::integer(0), Value::integer(1),
                                     Value::integer(2)}));
    CHECK_FALSE(is_sub_sfm(wrong_domain.build(), model));

    SfmBuilder wrong_function;
    wrong_function.exo(NodeId("Boulder"), bits());
    wrong_function.endo(NodeId("Dodge"), bits(),
                        StructuralFunction::expr(
                            {NodeId("Boulder")},
                            Expr::unary(Expr::Op::not_,
                                        Expr::parent(NodeId("Boulder")))));
    CHECK_FALSE(is_sub_sfm(wrong_function.build(), model));

    SfmBuilder dropped_parent;
    dropped_parent.exo(NodeId("Dodge"), bits());
    dropped_parent.endo(NodeId("Survive"), bits(),
                        StructuralFunction::expr({NodeId("Dodge")},
                                                 Expr::parent(NodeId("Dodge"))));
    CHECK_FALSE(is_sub_sfm(dropped_parent.build(), model));
}

TEST_CASE("composition merges compatible parts") {
    Sfm merged = compose({shadow_part(), hand_part()});
    CHECK(merged.nodes() == std::set<NodeId>{NodeId("Hand"), NodeId("Light"),
                                             NodeId("Object"), NodeId("Shadow")});
    CHECK(merged.exo_nodes() ==
          std::set<NodeId>{NodeId("Hand"), NodeId("Object")});

    Assignment exo;
    exo.set(NodeId("Hand"), Value::symbol("low"));
    exo.set(NodeId("Object"), Value::symbol("low"));
    CHECK(vfi(merged, exo).world.at(NodeId("Shadow")) == Value::symbol("long"));

    CHECK(is_sub_sfm(shadow_part(), merged));
    CHECK(is_sub_sfm(hand_part(), merged));

    SUBCASE("composing one part is the identity") {
        CHECK(compose({shadow_part()}) == shadow_part());
    }

    SUBCASE("composing no parts is the empty model") {
        CHECK(compose({}).nodes().empty());
    }
}

TEST_CASE("composition rejects incompatible or cyclic parts") {
    SfmBuilder ab;
    ab.exo(NodeId("A"), bits());
    ab.endo(NodeId("B"), bits(),
            StructuralFunction::expr({NodeId("A")}, Expr::parent(NodeId("A"))));

    SfmBuilder ba;
    ba.exo(NodeId("B"), bits());
    ba.endo(NodeId("A"), bits(),
            StructuralFunction::expr({NodeId("B")}, Expr::parent(NodeId("B"))));
    CHECK_THROWS_AS(compose({ab.build(), ba.build()}), CycleError);

    SfmBuilder clash;
    clash.exo(NodeId("A"),
              Domain::finite({Value::integer(0), Value::integer(1),
                              Value::integer(2)}));
    CHECK_THROWS_AS(compose({ab.build(), clash.build()}), PreconditionError);

    SfmBuilder other_function;
    other_function.exo(NodeId("A"), bits());
    other_function.endo(NodeId("B"), bits(),
                        StructuralFunction::expr(
                            {NodeId("A")},
                            Expr::unary(Expr::Op::not_,
                                        Expr::parent(NodeId("A")))));
    CHECK_THROWS_AS(compose({ab.build(), other_function.build()}),
                    PreconditionError);

    SfmBuilder other_parents;
    other_parents.exo(NodeId("A"), bits());
    other_parents.exo(NodeId("C"), bits());
    other_parents.endo(NodeId("B"), bits(),
                       StructuralFunction::expr(
                           {NodeId("A"), NodeId("C")},
                           Expr::binary(Expr::Op::and_, Expr::parent(NodeId("A")),
                                        Expr::parent(NodeId("C")))));
    CHECK_THROWS_AS(compose({ab.build(), other_parents.build()}),
                    PreconditionError);
}

TEST_CASE("decomposition fragments one part per function") {
    Sfm model = boulder_model();
    std::vector<Sfm> parts = decompose(model);
    CHECK(parts.size() == 2);
    for (const Sfm& part : parts) {
        CHECK(part.endo_nodes().size() == 1);
        CHECK(is_sub_sfm(part, model));
    }

    SUBCASE("an all-root model decomposes to itself") {
        SfmBuilder roots;
        roots.exo(NodeId("X"), bits());
        roots.exo(NodeId("Y"), bits());
        std::vector<Sfm> lone = decompose(roots.build());
        REQUIRE(lone.size() == 1);
        CHECK(lone[0] == roots.build());
    }

    SUBCASE("an unreferenced root gets its own part") {
        SfmBuilder b;
        b.exo(NodeId("Used"), bits());
        b.exo(NodeId("Idle"), bits());
        b.endo(NodeId("Out"), bits(),
               StructuralFunction::expr({NodeId("Used")},
                                        Expr::parent(NodeId("Used"))));
        Sfm m = b.build();
        std::vector<Sfm> parts2 = decompose(m);
        CHECK(parts2.size() == 2);
        CHECK(compose(parts2) == m);
    }
}

TEST_CASE("composing a decomposition restores the model") {
    std::mt19937_64 rng(90210);
    for (int round = 0; round < 80; ++round) {
        Sfm model = sfm::testing::random_model(rng);
        CHECK(compose(decompose(model)) == model);
    }
}
