#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "coalg/coalgebra.hpp"
#include "coalg/errors.hpp"

namespace coalg {

// ── next-time operator and the well-founded part ────────────────────────────

// { x | support of the structure at x is contained in s }.  Monotone in s.
// `s` is a membership mask over the carrier.
std::vector<bool> next_time(const Coalgebra& c, const std::vector<bool>& s);

struct WfReport {
    std::vector<bool> part;             // carrier of the well-founded part
    std::vector<std::uint32_t> rank;    // entry round, for states in the part
    std::uint32_t rounds = 0;           // iterations until the fixpoint
    bool is_well_founded = false;       // part == whole carrier

    std::vector<StateId> part_states() const;
};

// Least fixpoint of next_time by iteration from the empty set (reached in at
// most n rounds).  rank(x) = i when x enters at step i+1, so ranks give a
// topological order fold can process.
WfReport well_founded_part(const Coalgebra& c);

// ── recursive folds ─────────────────────────────────────────────────────────
// An algebra is a term evaluator: it receives the structure term of a state
// with every state reference replaced by an index into `args`, the previously
// computed values of the state's children.  Values need equality only.

template <typename V>
using AlgebraRule = std::function<V(const Term& image, const std::vector<V>& args)>;

namespace detail {

template <typename V>
std::uint32_t intern_value(std::vector<V>& table, const V& v) {
    for (std::uint32_t i = 0; i < table.size(); ++i)
        if (table[i] == v) return i;
    table.push_back(v);
    return static_cast<std::uint32_t>(table.size() - 1);
}

}  // namespace detail

// The unique coalgebra-to-algebra homomorphism out of a well-founded
// coalgebra, computed in ascending rank order.  Throws NotWellFounded when
// the fixpoint is proper.
template <typename V>
std::vector<V> fold(const Coalgebra& c, const AlgebraRule<V>& rule) {
    WfReport report = well_founded_part(c);
    if (!report.is_well_founded) {
        for (StateId x = 0; x < c.n; ++x)
            if (!report.part[x])
                throw NotWellFounded("state " + std::to_string(x) +
                                     " lies outside the well-founded part");
        throw NotWellFounded("coalgebra is not well-founded");
    }

    std::vector<StateId> order(c.n);
    for (StateId x = 0; x < c.n; ++x) order[x] = x;
    std::stable_sort(order.begin(), order.end(),
                     [&](StateId a, StateId b) { return report.rank[a] < report.rank[b]; });

    std::vector<V> table;                    // distinct values seen so far
    std::vector<StateId> value_of(c.n, 0);   // state -> index into table
    for (StateId x : order) {
        Term image = map_term(c.structure[x], value_of,
                              static_cast<std::uint32_t>(table.size()) + 1);
        value_of[x] = detail::intern_value(table, rule(image, table));
    }
    std::vector<V> result;
    result.reserve(c.n);
    for (StateId x = 0; x < c.n; ++x) result.push_back(table[value_of[x]]);
    return result;
}

// Same fold computed by memoized demand-driven recursion; used to check that
// the homomorphism is independent of evaluation strategy.
template <typename V>
std::vector<V> fold_memoized(const Coalgebra& c, const AlgebraRule<V>& rule) {
    WfReport report = well_founded_part(c);
    if (!report.is_well_founded) throw NotWellFounded("coalgebra is not well-founded");

    std::vector<V> table;
    constexpr StateId kPending = static_cast<StateId>(-1);
    std::vector<StateId> value_of(c.n, kPending);
    std::function<void(StateId)> visit = [&](StateId x) {
        if (value_of[x] != kPending) return;
        for (StateId y : support(c.structure[x])) visit(y);
        Term image = map_term(c.structure[x], value_of,
                              static_cast<std::uint32_t>(table.size()) + 1);
        value_of[x] = detail::intern_value(table, rule(image, table));
    };
    std::vector<V> result;
    result.reserve(c.n);
    for (StateId x = 0; x < c.n; ++x) visit(x);
    for (StateId x = 0; x < c.n; ++x) result.push_back(table[value_of[x]]);
    return result;
}

// Pointwise check of the fold equation h = beta . Hh . alpha for a candidate
// assignment h (works for non-well-founded coalgebras too).
template <typename V>
bool satisfies_fold_equation(const Coalgebra& c, const AlgebraRule<V>& rule,
                             const std::vector<V>& h) {
    std::vector<V> table;
    std::vector<StateId> value_of(c.n);
    for (StateId x = 0; x < c.n; ++x) value_of[x] = detail::intern_value(table, h[x]);
    for (StateId x = 0; x < c.n; ++x) {
        Term image = map_term(c.structure[x], value_of,
                              static_cast<std::uint32_t>(table.size()) + 1);
        if (!(rule(image, table) == h[x])) return false;
    }
    return true;
}

// ── built-in algebras ───────────────────────────────────────────────────────

// Node count of the unfolding: 1 + sum over the state slots of the image.
AlgebraRule<std::int64_t> size_algebra();

// Longest unfolding chain: 1 + max over the state slots (1 at leaves).
AlgebraRule<std::int64_t> depth_algebra();

// The three-valued powerset algebra over {0,1,2} that detects non-well-founded
// graph coalgebras: 0 on the empty set and {0}, otherwise 1 when 1 is a
// member, else 2.  Only meaningful for the functor P(Id).
AlgebraRule<std::int64_t> detector_algebra();

// The two candidate detector homomorphisms read off a graph coalgebra: 0 on
// the well-founded part and 1 (resp. 2) outside it.  Both satisfy the fold
// equation, and they differ exactly when the coalgebra is not well-founded.
std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> detector_homomorphisms(
    const Coalgebra& c);

}  // namespace coalg
