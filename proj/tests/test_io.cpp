#include <doctest.h>

#include "coalg/errors.hpp"
#include "coalg/io.hpp"
#include "testgen.hpp"

using namespace coalg;

TEST_CASE("coalgebra text files parse, honoring comments and order") {
    std::string src =
        "# a binary tree system\n"
        "functor: Id*Id+{leaf}\n"
        "states: 2\n"
        "point: 0\n"
        "1: inj 1 leaf\n"
        "0: inj 0 (@1, @1)   # root\n";
    CoalgebraFile cf = parse_coalgebra_text(src);
    CHECK(cf.coalg.n == 2);
    CHECK(cf.point == 0);
    CHECK(cf.coalg.structure[0] ==
          Term::inj(0, Term::pair(Term::state_ref(1), Term::state_ref(1))));
}

TEST_CASE("coalgebra file errors") {
    CHECK_THROWS_AS(parse_coalgebra_text("functor: Id\n"), ParseError);
    CHECK_THROWS_AS(parse_coalgebra_text("states: 1\nfunctor: Id\n0: @0\n"), ParseError);
    CHECK_THROWS_AS(parse_coalgebra_text("functor: Id\nstates: 1\n"), ParseError);
    CHECK_THROWS_AS(parse_coalgebra_text("functor: Id\nstates: 1\n0: @0\n0: @0\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_coalgebra_text("functor: Id\nstates: 1\npoint: 4\n0: @0\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_coalgebra_text("functor: Id\nstates: 1\n0: @9\n"), ParseError);
    CHECK_THROWS_AS(parse_coalgebra(""), ParseError);
}

TEST_CASE("text and json round-trips are bit-exact after canonicalization") {
    testgen::Rng rng(103);
    for (const auto& f : testgen::suite_functors()) {
        for (int i = 0; i < 40; ++i) {
            std::uint32_t n = 1 + rng() % 6;
            Coalgebra c = testgen::random_coalgebra(rng, f, n);
            std::optional<StateId> point = StateId(rng() % n);

            std::string text = write_coalgebra_text(c, point);
            CoalgebraFile back = parse_coalgebra(text);
            CHECK(write_coalgebra_text(back.coalg, back.point) == text);

            std::string json = write_coalgebra_json(c, point);
            CoalgebraFile jback = parse_coalgebra(json);
            CHECK(write_coalgebra_json(jback.coalg, jback.point) == json);
            CHECK(jback.coalg.structure == back.coalg.structure);
        }
    }
}

TEST_CASE("moore machine files round-trip") {
    testgen::Rng rng(107);
    for (int i = 0; i < 50; ++i) {
        MooreMachine m = testgen::random_moore(rng, 1 + rng() % 8, 1 + rng() % 3,
                                               1 + rng() % 3);
        std::string text = write_moore_text(m);
        MooreMachine back = parse_moore_text(text);
        CHECK(write_moore_text(back) == text);
    }
    CHECK_THROWS_AS(parse_moore_text("inputs: a\noutputs: 0\nstates: 1\ninitial: 0\n"
                                     "0: 0 0 -> 0\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_moore_text("inputs: a\noutputs: 0\nstates: 2\ninitial: 0\n"
                                     "0: 0 -> 0\n"),
                    ParseError);
}

TEST_CASE("dot export shapes") {
    CoalgebraFile cf = parse_coalgebra_text(
        "functor: P(Id)\nstates: 2\npoint: 0\n0: {@1}\n1: {}\n");
    std::string dot = coalgebra_to_dot(cf.coalg, cf.point);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("q0 -> q1") != std::string::npos);
    CHECK(dot.find("peripheries=2") != std::string::npos);

    Tree t = tree_expansion(cf.pointed("expand"), -1);
    std::string tdot = tree_to_dot(t);
    CHECK(tdot.find("t0 -> t1") != std::string::npos);
}
