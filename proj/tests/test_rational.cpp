#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "coalg/errors.hpp"
#include "coalg/rational.hpp"
#include "oracles.hpp"
#include "testgen.hpp"

using namespace coalg;

namespace {

Coalgebra graph(std::uint32_t n, const std::vector<std::vector<StateId>>& edges) {
    std::vector<Term> structure;
    for (StateId x = 0; x < n; ++x) {
        std::vector<Term> elems;
        for (StateId y : edges[x]) elems.push_back(Term::state_ref(y));
        structure.push_back(Term::set_of(std::move(elems)));
    }
    return Coalgebra::make(parse_functor("P(Id)"), std::move(structure));
}

PointedCoalgebra permuted(const PointedCoalgebra& pc, const std::vector<StateId>& perm) {
    std::vector<Term> structure(pc.base.n);
    for (StateId x = 0; x < pc.base.n; ++x)
        structure[perm[x]] = map_term(pc.base.structure[x], perm, pc.base.n);
    return PointedCoalgebra::make(Coalgebra::make(pc.base.functor, std::move(structure)),
                                  perm[pc.point]);
}

}  // namespace

TEST_CASE("canonical_form is invariant under state permutations") {
    testgen::Rng rng(43);
    int found = 0;
    while (found < 120) {
        const auto& f = testgen::suite_functors()[rng() % testgen::suite_functors().size()];
        std::uint32_t n = 1 + rng() % 6;
        PointedCoalgebra pc = wp(testgen::random_pointed(rng, f, n));
        ++found;
        std::vector<StateId> perm(pc.base.n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(canonical_form(pc).digest == canonical_form(permuted(pc, perm)).digest);
    }
}

TEST_CASE("canonical_form of Omega") {
    CanonicalForm form = canonical_form(PointedCoalgebra::make(graph(1, {{0}}), 0));
    CHECK(form.digest == "P(Id)|1|{@0}");
    CHECK(form.coalg.base.structure[0] == Term::set_of({Term::state_ref(0)}));
}

TEST_CASE("the four-state binary tree system is already well-pointed") {
    // 0 -> (0,1), 1 -> (2,3), 2 -> (3,3), 3: leaf — four distinct subtrees
    FunctorExpr f = parse_functor("Id*Id+{leaf}");
    Coalgebra c = Coalgebra::make(
        f, {Term::inj(0, Term::pair(Term::state_ref(0), Term::state_ref(1))),
            Term::inj(0, Term::pair(Term::state_ref(2), Term::state_ref(3))),
            Term::inj(0, Term::pair(Term::state_ref(3), Term::state_ref(3))),
            Term::inj(1, Term::const_val(0))});
    CanonicalForm form = canonical_form(PointedCoalgebra::make(c, 0));
    CHECK(form.coalg.base.n == 4);
    // wp leaves it untouched up to isomorphism
    CHECK(wp_element(PointedCoalgebra::make(c, 0)).form.digest == form.digest);
}

TEST_CASE("canonical_form rejects non-well-pointed inputs with a witness") {
    // unreachable state
    Coalgebra line = graph(3, {{1}, {}, {0}});
    CHECK_THROWS_AS(canonical_form(PointedCoalgebra::make(line, 0)), NotWellPointed);
    try {
        canonical_form(PointedCoalgebra::make(line, 0));
    } catch (const NotWellPointed& e) {
        CHECK(std::string(e.what()).find("{0,1}") != std::string::npos);
    }
    // mergeable pair
    Coalgebra loops = graph(2, {{1}, {0}});
    CHECK_THROWS_AS(canonical_form(PointedCoalgebra::make(loops, 0)), NotWellPointed);
}

TEST_CASE("is_isomorphic") {
    testgen::Rng rng(47);
    PointedCoalgebra pc = wp(testgen::random_pointed(rng, parse_functor("P({a,b}*Id)"), 5));
    std::vector<StateId> perm(pc.base.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(is_isomorphic(pc, permuted(pc, perm)));

    // wp of the 2-cycle is Omega itself
    PointedCoalgebra two_cycle = PointedCoalgebra::make(graph(2, {{1}, {0}}), 0);
    PointedCoalgebra omega = PointedCoalgebra::make(graph(1, {{0}}), 0);
    CHECK(is_isomorphic(wp(two_cycle), omega));

    // Omega is not the single deadlock
    PointedCoalgebra deadlock = PointedCoalgebra::make(graph(1, {{}}), 0);
    CHECK_FALSE(is_isomorphic(omega, deadlock));
}

TEST_CASE("a_plus fixes well-pointed coalgebras and is natural") {
    testgen::Rng rng(53);
    for (const auto& f : testgen::suite_functors()) {
        for (int i = 0; i < 40; ++i) {
            PointedCoalgebra pc = wp(testgen::random_pointed(rng, f, 1 + rng() % 6));
            // a_plus(base)(point) = the canonical form itself
            CHECK(a_plus(pc.base)[pc.point].form.digest == canonical_form(pc).digest);
        }
    }
}

TEST_CASE("a_plus is constant along homomorphisms") {
    testgen::Rng rng(59);
    for (const auto& f : testgen::suite_functors()) {
        for (int i = 0; i < 40; ++i) {
            Coalgebra c = testgen::random_coalgebra(rng, f, 1 + rng() % 6);
            auto ap_source = a_plus(c);

            SimpleQuotient sq = simple_quotient(c);
            auto ap_quotient = a_plus(sq.coalg);
            for (StateId x = 0; x < c.n; ++x)
                CHECK(ap_source[x].form.digest ==
                      ap_quotient[sq.partition.block_of[x]].form.digest);

            StateId p = rng() % c.n;
            ReachablePart rp = reachable_part(PointedCoalgebra::make(c, p));
            auto ap_sub = a_plus(rp.coalg.base);
            for (StateId x = 0; x < rp.coalg.base.n; ++x)
                CHECK(ap_sub[x].form.digest == ap_source[rp.embedding.map[x]].form.digest);
        }
    }
}

TEST_CASE("a_plus is injective on simple coalgebras") {
    testgen::Rng rng(61);
    for (const auto& f : testgen::suite_functors()) {
        for (int i = 0; i < 30; ++i) {
            Coalgebra c = simple_quotient(testgen::random_coalgebra(rng, f, 1 + rng() % 6)).coalg;
            auto ap = a_plus(c);
            for (StateId x = 0; x < c.n; ++x)
                for (StateId y = x + 1; y < c.n; ++y)
                    CHECK(ap[x].form.digest != ap[y].form.digest);
        }
    }
}

TEST_CASE("rho_structure on streams and Omega") {
    // Omega: psi*(Omega) = { digest(Omega) }
    RhoElement omega = wp_element(PointedCoalgebra::make(graph(1, {{0}}), 0));
    DigestTerm dt = rho_structure(omega);
    CHECK(render_digest_term(dt, omega.form.coalg.base.functor) == "{<P(Id)|1|{@0}>}");

    // a nonempty stream unfolds to (tail digest, head symbol) in the left summand
    FunctorExpr sf = parse_functor("Id*{a,b}+{end}");
    Coalgebra stream = Coalgebra::make(
        sf, {Term::inj(0, Term::pair(Term::state_ref(1), Term::const_val(0))),
             Term::inj(1, Term::const_val(0))});
    RhoElement head = wp_element(PointedCoalgebra::make(stream, 0));
    auto ap = a_plus(head.form.coalg.base);
    DigestTerm step = rho_structure(head);
    CHECK(step.term.kind == Term::Kind::Inj);
    CHECK(step.term.index == 0);
    std::string rendered = render_digest_term(step, sf);
    CHECK(rendered == "inj 0 (<" + ap[1].form.digest + ">, a)");

    // the empty stream maps into the terminal summand
    RhoElement empty = wp_element(PointedCoalgebra::make(stream, 1));
    DigestTerm empty_step = rho_structure(empty);
    CHECK(empty_step.term == Term::inj(1, Term::const_val(0)));
}

TEST_CASE("in_mu distinguishes trees from cycles") {
    CHECK_FALSE(in_mu(wp_element(PointedCoalgebra::make(graph(1, {{0}}), 0))));
    FunctorExpr f = parse_functor("Id*Id+{leaf}");
    Coalgebra leaf_only = Coalgebra::make(f, {Term::inj(1, Term::const_val(0))});
    CHECK(in_mu(wp_element(PointedCoalgebra::make(leaf_only, 0))));
    // lasso with nonempty period
    FunctorExpr sf = parse_functor("Id*{a}+{end}");
    Coalgebra lasso = Coalgebra::make(
        sf, {Term::inj(0, Term::pair(Term::state_ref(0), Term::const_val(0)))});
    CHECK_FALSE(in_mu(wp_element(PointedCoalgebra::make(lasso, 0))));
}

TEST_CASE("enumerate_wp on constants") {
    CHECK(enumerate_wp(parse_functor("{s}"), 3, false).size() == 1);
    CHECK(enumerate_wp(parse_functor("{0,1}"), 3, false).size() == 2);
}

TEST_CASE("enumerate_wp counts binary trees against the subtree oracle") {
    FunctorExpr f = parse_functor("Id*Id+{leaf}");
    for (std::uint32_t k = 1; k <= 3; ++k) {
        auto mu = enumerate_wp(f, k, true);
        CHECK(mu.size() == oracle::count_trees_with_subtree_bound(k));
    }
}

TEST_CASE("mu is contained in rho") {
    for (const char* src : {"Id*Id+{leaf}", "P(Id)"}) {
        FunctorExpr f = parse_functor(src);
        auto mu = enumerate_wp(f, 3, true);
        auto rho = enumerate_wp(f, 3, false);
        for (const auto& m : mu) {
            bool present = false;
            for (const auto& r : rho)
                if (r.form.digest == m.form.digest) present = true;
            CHECK(present);
        }
        CHECK(std::is_sorted(rho.begin(), rho.end(), [](const auto& a, const auto& b) {
            return a.form.digest < b.form.digest;
        }));
    }
}

TEST_CASE("enumerate_wp honors its resource guard") {
    CHECK_THROWS_AS(enumerate_wp(parse_functor("P(Id)"), 8, false, 1000), ResourceLimit);
}

TEST_CASE("finality law holds pointwise") {
    testgen::Rng rng(67);
    for (const auto& f : testgen::suite_functors()) {
        for (int i = 0; i < 30; ++i) {
            Coalgebra c = testgen::random_coalgebra(rng, f, 1 + rng() % 5);
            auto ap = a_plus(c);
            for (StateId x = 0; x < c.n; ++x) {
                DigestTerm lhs = rho_structure(ap[x]);
                DigestTerm rhs = digest_image(c, x, ap);
                CHECK(render_digest_term(lhs, f) == render_digest_term(rhs, f));
            }
        }
    }
}

TEST_CASE("uniqueness: only a_plus satisfies the finality law (exhaustive, small)") {
    auto rho = enumerate_wp(parse_functor("P(Id)"), 3, false);
    std::map<std::string, std::string> rho_render;  // psi* is per element, memoize
    for (const auto& r : rho)
        rho_render[r.form.digest] =
            render_digest_term(rho_structure(r), r.form.coalg.base.functor);

    // every map of states into rho elements that satisfies the law pointwise
    // must be a_plus
    for (const Coalgebra& c : {graph(2, {{1}, {}}), graph(3, {{1, 2}, {2}, {}}),
                               graph(3, {{1}, {2}, {0, 1}})}) {
        auto ap = a_plus(c);
        std::size_t valid = 0;
        std::vector<std::size_t> odo(c.n, 0);
        while (true) {
            std::vector<RhoElement> candidate;
            for (StateId x = 0; x < c.n; ++x) candidate.push_back(rho[odo[x]]);
            bool law = true;
            for (StateId x = 0; x < c.n && law; ++x)
                law = rho_render.at(candidate[x].form.digest) ==
                      render_digest_term(digest_image(c, x, candidate), c.functor);
            if (law) {
                ++valid;
                for (StateId x = 0; x < c.n; ++x)
                    CHECK(candidate[x].form.digest == ap[x].form.digest);
            }
            std::size_t i = c.n;
            bool done = true;
            while (i > 0) {
                --i;
                if (++odo[i] < rho.size()) {
                    done = false;
                    break;
                }
                odo[i] = 0;
            }
            if (done) break;
        }
        CHECK(valid == 1);
    }
}

TEST_CASE("digests are stable across runs") {
    // frozen golden digests; a change here is a format break
    CHECK(wp_element(PointedCoalgebra::make(graph(2, {{1}, {}}), 0)).form.digest ==
          "P(Id)|2|{@1};{}");
    FunctorExpr f = parse_functor("Id*Id+{leaf}");
    Coalgebra node = Coalgebra::make(
        f, {Term::inj(0, Term::pair(Term::state_ref(1), Term::state_ref(1))),
            Term::inj(1, Term::const_val(0))});
    CHECK(wp_element(PointedCoalgebra::make(node, 0)).form.digest ==
          "Id*Id+{leaf}|2|inj 0 (@1, @1);inj 1 leaf");
}
