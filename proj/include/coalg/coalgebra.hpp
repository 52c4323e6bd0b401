#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coalg/functor.hpp"
#include "coalg/term.hpp"

namespace coalg {

// ── Coalgebra ───────────────────────────────────────────────────────────────
// A finite coalgebra: carrier {0..n-1} and one canonicalized, well-typed term
// per state (structure[x] is the one-step behavior of x).  Values are
// immutable after construction; all operations below are pure.

struct Coalgebra {
    FunctorExpr functor;
    std::uint32_t n = 0;
    std::vector<Term> structure;

    // Canonicalizes and type-checks every state's term.
    static Coalgebra make(FunctorExpr f, std::vector<Term> structure);
};

struct PointedCoalgebra {
    Coalgebra base;
    StateId point = 0;  // point < base.n, so the carrier is nonempty

    static PointedCoalgebra make(Coalgebra base, StateId point);
};

// A candidate homomorphism: a total map of carriers between two coalgebras
// over the same functor.
struct Hom {
    Coalgebra source;
    Coalgebra target;
    std::vector<StateId> map;  // map[x] < target.n for all x < source.n
};

// Kernel of a quotient: a block index per state, blocks numbered by first
// occurrence so the numbering is deterministic.
struct Partition {
    std::vector<std::uint32_t> block_of;
    std::uint32_t blocks = 0;
};

// True iff Hh . alpha = beta . h state by state.  Throws FunctorMismatch when
// the two coalgebras live over different functors and DomainError when the
// map is not total or lands outside the target carrier.
bool check_homomorphism(const Hom& h);

// adjacency[x] = support of the structure at x (edges of the canonical graph).
std::vector<std::vector<StateId>> canonical_graph(const Coalgebra& c);

struct ReachablePart {
    PointedCoalgebra coalg;   // induced subcoalgebra, renumbered in BFS order
    Hom embedding;            // maps new indices back into the original carrier
};

// Breadth-first closure of {point} under the canonical graph, neighbors
// visited in ascending state order; the point becomes state 0.
ReachablePart reachable_part(const PointedCoalgebra& pc);

struct SimpleQuotient {
    Coalgebra coalg;      // quotient on blocks
    Hom projection;       // the quotient homomorphism
    Partition partition;  // its kernel (the coarsest stable partition)
};

// Coarsest stable partition under behavioral signature refinement; the
// quotient is simple (refining it again is discrete).
SimpleQuotient simple_quotient(const Coalgebra& c);

// Well-pointed modification: simple quotient, then reachable part from the
// image of the point, then canonical renumbering.  Idempotent up to
// isomorphism (the canonical numbering makes it idempotent on the nose).
PointedCoalgebra wp(const PointedCoalgebra& pc);

// Canonical renumbering of a simple + reachable pointed coalgebra: iterated
// behavioral codes break all ties, then BFS from the point visiting support
// in ascending final-code order.  The output does not depend on the input
// numbering.  Precondition (not checked here): pc is well-pointed.
PointedCoalgebra canonical_renumber(const PointedCoalgebra& pc);

}  // namespace coalg
