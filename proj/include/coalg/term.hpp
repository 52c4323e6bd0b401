#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "coalg/functor.hpp"

namespace coalg {

using StateId = std::uint32_t;

// ── Term ────────────────────────────────────────────────────────────────────
// A structural element of H(X) for a carrier X = {0..n-1}.  A term is
// well-typed against exactly one FunctorExpr and carrier size:
//
//     Const     ConstVal(index into the declared carrier)
//     Id        StateRef(state < n)
//     Prod      Pair(left, right)
//     Coprod    Inj(tag, payload)
//     Exp       Tab(one child per index symbol, in declared order)
//     Pow       SetOf(children sorted and duplicate-free in term order)
//
// Terms are immutable values; equality of canonicalized terms decides
// equality in H(X).

struct Term {
    enum class Kind : std::uint8_t { ConstVal, StateRef, Pair, Inj, Tab, SetOf };

    Kind kind = Kind::StateRef;
    std::uint32_t index = 0;      // ConstVal: symbol position; StateRef: state; Inj: tag
    std::vector<Term> children;

    bool operator==(const Term& o) const;

    static Term const_val(std::uint32_t symbol_pos);
    static Term state_ref(StateId s);
    static Term pair(Term l, Term r);
    static Term inj(std::uint32_t tag, Term payload);
    static Term tab(std::vector<Term> entries);
    static Term set_of(std::vector<Term> elements);  // canonicalizes the list
};

// Canonical total order: ConstVal < StateRef < Pair < Inj < Tab < SetOf;
// within a kind by payload, then lexicographically by children.
int compare_terms(const Term& a, const Term& b);
bool term_less(const Term& a, const Term& b);

// Recursively sorts and de-duplicates every SetOf.  Idempotent.
Term canonicalize_term(const Term& t);

// Action of H on a function f: [n_source) -> [n_target).  StateRef leaves are
// renamed; SetOf nodes are re-sorted and de-duplicated (a non-injective f may
// shrink sets).  Throws DomainError when a renamed index lands out of range.
Term map_term(const Term& t, std::span<const StateId> f, std::uint32_t n_target);

// Least support: the set of StateRef leaves, sorted ascending.  Equals the
// least M with t in H(M) for grammar functors.
std::vector<StateId> support(const Term& t);

// Throws DomainError naming the offending subterm when t is not an element of
// f applied to a carrier of size n.
void validate_term(const Term& t, const FunctorExpr& f, std::uint32_t n);
bool is_well_typed(const Term& t, const FunctorExpr& f, std::uint32_t n);

// All elements of H({0..n-1}) in ascending term order.  Throws ResourceLimit
// when the count exceeds `limit` (or does not fit in 64 bits).
std::vector<Term> enumerate_terms(const FunctorExpr& f, std::uint32_t n,
                                  std::uint64_t limit = 1u << 22);

// ── text form ───────────────────────────────────────────────────────────────
// `@k` state, `sym` constant, `(t,t)` pair, `inj k t`, `[i:t, ...]` table,
// `{t, ...}` set.  Rendering is typed (symbol names come from the functor).
// `leaf` overrides how StateRef leaves print (used for digest-labeled terms).
using LeafPrinter = std::function<std::string(StateId)>;
std::string render_term(const Term& t, const FunctorExpr& f, const LeafPrinter& leaf = nullptr);

// Typed parse of the text form: the expected structure is driven by f.
Term parse_term(const std::string& src, const FunctorExpr& f, std::uint32_t n);

}  // namespace coalg
