#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coalg/coalgebra.hpp"
#include "coalg/wellfounded.hpp"

namespace coalg {

// ── CanonicalForm ───────────────────────────────────────────────────────────
// A well-pointed coalgebra in canonical numbering (point = 0) together with a
// stable one-line digest of (functor, carrier size, structure).  Digest
// equality decides isomorphism of well-pointed coalgebras, and digests sort
// lexicographically, which makes them usable as golden-file keys.

struct CanonicalForm {
    PointedCoalgebra coalg;
    std::string digest;
};

// An element of the rational fixed point at desk scale: a finite well-pointed
// coalgebra up to isomorphism.  `well_founded` marks membership in the
// initial algebra.
struct RhoElement {
    CanonicalForm form;
    std::uint32_t size = 0;
    bool well_founded = false;

    bool operator==(const RhoElement& o) const { return form.digest == o.form.digest; }
};

// Digest of an already canonically numbered pointed coalgebra.
std::string digest_of(const PointedCoalgebra& canonical);

// Validates that pc is well-pointed (reachable part bijective, simple
// quotient discrete), then renumbers canonically.  Throws NotWellPointed with
// a witness: a proper subcoalgebra containing the point, or a mergeable pair.
CanonicalForm canonical_form(const PointedCoalgebra& pc);

// Both arguments must be well-pointed; true iff their digests agree.
bool is_isomorphic(const PointedCoalgebra& a, const PointedCoalgebra& b);

// Well-pointed modification packaged as a rho element (wp + digest + the
// well-foundedness flag).
RhoElement wp_element(const PointedCoalgebra& pc);

// a_plus(c)[x] = the rho element of (c pointed at x); the map into the final
// coalgebra at desk scale.
std::vector<RhoElement> a_plus(const Coalgebra& c);

// ── the coalgebra structure of rho H ────────────────────────────────────────
// psi*(r): the structure term of the point with state leaves replaced by
// digests.  The term's state references index into `labels`, which holds the
// distinct digests in ascending order (so set children stay sorted by label).

struct DigestTerm {
    Term term;
    std::vector<std::string> labels;
};

std::string render_digest_term(const DigestTerm& dt, const FunctorExpr& f);

DigestTerm rho_structure(const RhoElement& r);

// The right-hand side of the finality law for an arbitrary coalgebra: the
// structure of x with every state y replaced by the digest of a_plus(c)[y].
DigestTerm digest_image(const Coalgebra& c, StateId x,
                        const std::vector<RhoElement>& a_plus_of_c);

bool in_mu(const RhoElement& r);

// ── exhaustive enumeration of finite well-pointed coalgebras ────────────────
// Every structure map on carriers of size 1..max_states, pointed at every
// state, is run through wp; distinct digests are collected and the result is
// sorted by digest.  Throws ResourceLimit when the raw structure-map space
// exceeds `limit`.
std::vector<RhoElement> enumerate_wp(const FunctorExpr& f, std::uint32_t max_states,
                                     bool only_well_founded,
                                     std::uint64_t limit = 4u << 20);

}  // namespace coalg
