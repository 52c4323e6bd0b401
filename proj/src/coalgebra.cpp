#include "coalg/coalgebra.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "coalg/errors.hpp"

namespace coalg {

Coalgebra Coalgebra::make(FunctorExpr f, std::vector<Term> structure) {
    Coalgebra c;
    c.functor = std::move(f);
    c.n = static_cast<std::uint32_t>(structure.size());
    c.structure.reserve(structure.size());
    for (std::uint32_t x = 0; x < c.n; ++x) {
        Term t = canonicalize_term(structure[x]);
        try {
            validate_term(t, c.functor, c.n);
        } catch (const DomainError& e) {
            throw DomainError("state " + std::to_string(x) + ": " + e.what());
        }
        c.structure.push_back(std::move(t));
    }
    return c;
}

PointedCoalgebra PointedCoalgebra::make(Coalgebra base, StateId point) {
    if (point >= base.n)
        throw DomainError("point " + std::to_string(point) + " outside carrier of " +
                          std::to_string(base.n) + " states");
    return PointedCoalgebra{std::move(base), point};
}

bool check_homomorphism(const Hom& h) {
    if (!(h.source.functor == h.target.functor))
        throw FunctorMismatch("homomorphism between coalgebras over different functors");
    if (h.map.size() != h.source.n)
        throw DomainError("homomorphism map is not total on the source carrier");
    for (StateId x = 0; x < h.source.n; ++x)
        if (h.map[x] >= h.target.n)
            throw DomainError("homomorphism maps state " + std::to_string(x) +
                              " outside the target carrier");
    for (StateId x = 0; x < h.source.n; ++x) {
        Term lhs = map_term(h.source.structure[x], h.map, h.target.n);
        if (!(lhs == h.target.structure[h.map[x]])) return false;
    }
    return true;
}

std::vector<std::vector<StateId>> canonical_graph(const Coalgebra& c) {
    std::vector<std::vector<StateId>> adj;
    adj.reserve(c.n);
    for (StateId x = 0; x < c.n; ++x) adj.push_back(support(c.structure[x]));
    return adj;
}

ReachablePart reachable_part(const PointedCoalgebra& pc) {
    const Coalgebra& c = pc.base;
    constexpr StateId kUnseen = static_cast<StateId>(-1);
    std::vector<StateId> new_of(c.n, kUnseen);
    std::vector<StateId> old_of;
    std::deque<StateId> queue;

    new_of[pc.point] = 0;
    old_of.push_back(pc.point);
    queue.push_back(pc.point);
    while (!queue.empty()) {
        StateId x = queue.front();
        queue.pop_front();
        for (StateId y : support(c.structure[x])) {  // support is already ascending
            if (new_of[y] == kUnseen) {
                new_of[y] = static_cast<StateId>(old_of.size());
                old_of.push_back(y);
                queue.push_back(y);
            }
        }
    }

    std::uint32_t m = static_cast<std::uint32_t>(old_of.size());
    std::vector<Term> structure;
    structure.reserve(m);
    for (StateId i = 0; i < m; ++i)
        structure.push_back(map_term(c.structure[old_of[i]], new_of, m));

    ReachablePart out;
    out.coalg.base.functor = c.functor;
    out.coalg.base.n = m;
    out.coalg.base.structure = std::move(structure);
    out.coalg.point = 0;
    out.embedding.source = out.coalg.base;
    out.embedding.target = c;
    out.embedding.map = std::move(old_of);
    return out;
}

namespace {

// Groups states by the given signature terms; blocks numbered by first
// occurrence in state order.
Partition group_by_signature(const std::vector<Term>& sig) {
    Partition p;
    p.block_of.resize(sig.size());
    std::map<const Term*, std::uint32_t, decltype([](const Term* a, const Term* b) {
                 return compare_terms(*a, *b) < 0;
             })>
        block_of_sig;
    for (std::size_t x = 0; x < sig.size(); ++x) {
        auto [it, inserted] = block_of_sig.try_emplace(&sig[x], p.blocks);
        if (inserted) ++p.blocks;
        p.block_of[x] = it->second;
    }
    return p;
}

}  // namespace

SimpleQuotient simple_quotient(const Coalgebra& c) {
    Partition part;
    part.block_of.assign(c.n, 0);
    part.blocks = c.n > 0 ? 1 : 0;

    while (true) {
        std::vector<Term> sig;
        sig.reserve(c.n);
        for (StateId x = 0; x < c.n; ++x)
            sig.push_back(map_term(c.structure[x], part.block_of, part.blocks));
        Partition next = group_by_signature(sig);
        if (next.blocks == part.blocks) {
            // stable: states in one block share a signature; build the quotient
            std::vector<Term> qstruct(next.blocks);
            std::vector<bool> seen(next.blocks, false);
            for (StateId x = 0; x < c.n; ++x) {
                std::uint32_t b = next.block_of[x];
                if (!seen[b]) {
                    qstruct[b] = map_term(c.structure[x], next.block_of, next.blocks);
                    seen[b] = true;
                }
            }
            SimpleQuotient out;
            out.coalg.functor = c.functor;
            out.coalg.n = next.blocks;
            out.coalg.structure = std::move(qstruct);
            out.projection.source = c;
            out.projection.target = out.coalg;
            out.projection.map = next.block_of;
            out.partition = std::move(next);
            return out;
        }
        part = std::move(next);
    }
}

PointedCoalgebra canonical_renumber(const PointedCoalgebra& pc) {
    const Coalgebra& c = pc.base;
    std::uint32_t n = c.n;

    // Behavioral codes: start indiscrete, refine by signature rank until all
    // states are separated (simplicity guarantees this terminates discrete).
    std::vector<StateId> code(n, 0);
    std::uint32_t distinct = n > 0 ? 1 : 0;
    while (distinct < n) {
        std::vector<Term> sig;
        sig.reserve(n);
        for (StateId x = 0; x < n; ++x) sig.push_back(map_term(c.structure[x], code, distinct));
        std::vector<Term> sorted = sig;
        std::sort(sorted.begin(), sorted.end(), term_less);
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::uint32_t next_distinct = static_cast<std::uint32_t>(sorted.size());
        if (next_distinct == distinct)
            throw DomainError("canonical renumbering requires a simple coalgebra");
        for (StateId x = 0; x < n; ++x) {
            auto it = std::lower_bound(sorted.begin(), sorted.end(), sig[x], term_less);
            code[x] = static_cast<StateId>(it - sorted.begin());
        }
        distinct = next_distinct;
    }

    // BFS from the point, neighbors in ascending final-code order.
    constexpr StateId kUnseen = static_cast<StateId>(-1);
    std::vector<StateId> new_of(n, kUnseen);
    std::vector<StateId> old_of;
    std::deque<StateId> queue;
    new_of[pc.point] = 0;
    old_of.push_back(pc.point);
    queue.push_back(pc.point);
    while (!queue.empty()) {
        StateId x = queue.front();
        queue.pop_front();
        std::vector<StateId> nbrs = support(c.structure[x]);
        std::sort(nbrs.begin(), nbrs.end(),
                  [&](StateId a, StateId b) { return code[a] < code[b]; });
        for (StateId y : nbrs) {
            if (new_of[y] == kUnseen) {
                new_of[y] = static_cast<StateId>(old_of.size());
                old_of.push_back(y);
                queue.push_back(y);
            }
        }
    }
    if (old_of.size() != n)
        throw DomainError("canonical renumbering requires a reachable pointed coalgebra");

    PointedCoalgebra out;
    out.base.functor = c.functor;
    out.base.n = n;
    out.base.structure.reserve(n);
    for (StateId i = 0; i < n; ++i)
        out.base.structure.push_back(map_term(c.structure[old_of[i]], new_of, n));
    out.point = 0;
    return out;
}

PointedCoalgebra wp(const PointedCoalgebra& pc) {
    SimpleQuotient sq = simple_quotient(pc.base);
    PointedCoalgebra quotient_pointed{sq.coalg, sq.partition.block_of[pc.point]};
    ReachablePart rp = reachable_part(quotient_pointed);
    return canonical_renumber(rp.coalg);
}

}  // namespace coalg
