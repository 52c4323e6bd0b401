#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coalg/coalgebra.hpp"
#include "coalg/wellfounded.hpp"

namespace coalg {

// ── Moore machines: HX = X^I x J ────────────────────────────────────────────

struct MooreMachine {
    std::vector<std::string> inputs;            // nonempty, ordered
    std::vector<std::string> outputs;           // nonempty, ordered
    std::uint32_t n = 0;
    std::vector<std::vector<StateId>> next;     // next[state][input]
    std::vector<std::uint32_t> out;             // out[state] -> output index
    StateId initial = 0;
};

FunctorExpr moore_functor(const std::vector<std::string>& inputs,
                          const std::vector<std::string>& outputs);

// alpha(q) = ([i: @next(q,i)], out(q)); round-trips with coalgebra_to_moore.
PointedCoalgebra moore_to_coalgebra(const MooreMachine& m);

// Requires the functor Id^{I}*{J}; throws FunctorMismatch otherwise.
MooreMachine coalgebra_to_moore(const PointedCoalgebra& pc);

// beta(w) = output of the state reached from the initial state by w, for all
// words of length <= max_len (word = sequence of input indices).
std::map<std::vector<std::uint32_t>, std::uint32_t> moore_behavior(const MooreMachine& m,
                                                                   std::uint32_t max_len);

// Reachable observable machine in canonical numbering.
MooreMachine minimize_moore(const MooreMachine& m);

// ── streams: HX = X x I + 1 ─────────────────────────────────────────────────

struct StreamSpec {
    bool is_lasso = false;
    std::string prefix;   // the whole word when finite, else u
    std::string period;   // v, nonempty iff is_lasso

    static StreamSpec finite(std::string w);
    static StreamSpec lasso(std::string u, std::string v);
    bool operator==(const StreamSpec& o) const;
};

// `u` for a finite stream, `u(v)^w` for the eventually periodic one.
StreamSpec parse_stream(const std::string& literal);
std::string print_stream(const StreamSpec& s);

// Finite words become paths ending in a deadlock; lassos become a path into a
// cycle.  The functor is Id*{<alphabet>}+{end} over the symbols that occur.
PointedCoalgebra stream_to_coalgebra(const StreamSpec& s);

// Decodes wp of the encoding back to the unique minimal representation.
StreamSpec stream_normalize(const StreamSpec& s);

// ── trees: coalgebraic unfoldings ───────────────────────────────────────────
// A tree node mirrors a structure term with state references expanded in
// place.  Set nodes normally keep children sorted and duplicate-free; the
// strong-extensionality checker accepts arbitrary (possibly duplicated)
// children so adversarial inputs can be expressed.  Cut nodes mark where a
// depth bound stopped the unfolding; distinct cut ids make truncation leaves
// pairwise non-bisimilar.

struct Tree {
    enum class Kind : std::uint8_t { Const, Pair, Inj, Tab, SetOf, Cut };

    Kind kind = Kind::Cut;
    std::uint32_t index = 0;          // Inj: tag; Cut: id (0 = plain cut)
    std::string symbol;               // Const: symbol name
    std::vector<std::string> keys;    // Tab: index symbols, one per child
    std::vector<Tree> children;

    bool operator==(const Tree& o) const;

    static Tree cut(std::uint32_t id = 0);
    static Tree constant(std::string symbol);
    static Tree pair(Tree l, Tree r);
    static Tree inj(std::uint32_t tag, Tree payload);
    static Tree tab(std::vector<std::string> keys, std::vector<Tree> children);
    static Tree set_of(std::vector<Tree> elements);  // sorts + dedupes
};

int compare_trees(const Tree& a, const Tree& b);
std::string render_tree(const Tree& t);

// Unfolds from the point.  depth >= 0 cuts state slots after that many
// levels; depth < 0 requests the full expansion and throws
// FullExpansionDiverges unless the coalgebra is well-founded.  With
// distinct_cuts every truncation leaf receives a fresh id.
Tree tree_expansion(const PointedCoalgebra& pc, int depth, bool distinct_cuts = false);

// Fold algebra producing the full expansion (agrees with tree_expansion at
// negative depth on well-founded coalgebras).
AlgebraRule<Tree> expansion_algebra(const FunctorExpr& f);

// Greatest tree-bisimulation on t x t is trivial?  (Same-depth pairs with
// related parents, shrunk by the bisimulation clause.)
bool is_strongly_extensional(const Tree& t);

// ── hereditarily finite sets ────────────────────────────────────────────────

struct HFSet {
    std::vector<HFSet> elems;  // sorted, duplicate-free

    static HFSet make(std::vector<HFSet> elems);
    bool operator==(const HFSet& o) const;
};

int compare_hf(const HFSet& a, const HFSet& b);
HFSet parse_hf(const std::string& literal);   // e.g. {{},{{}}}
std::string print_hf(const HFSet& s);
HFSet von_neumann(std::uint32_t k);

// Membership graph of the hereditary members of s, pointed at s; always
// well-pointed and well-founded, over P(Id).
PointedCoalgebra canonical_picture(const HFSet& s);

// The decoration d(x) = { d(y) | y a neighbor of x } of a well-founded graph;
// returns d(point).  Inverse of canonical_picture on its image.
HFSet mostowski_collapse(const PointedCoalgebra& pc);

}  // namespace coalg
