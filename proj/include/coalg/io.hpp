#pragma once

#include <optional>
#include <string>

#include "coalg/coalgebra.hpp"
#include "coalg/instances.hpp"

namespace coalg {

// ── coalgebra files ─────────────────────────────────────────────────────────
// Text format:
//
//     functor: Id*Id+{leaf}
//     states: 4
//     point: 0            # optional
//     0: inj 0 (@1, @2)
//     1: inj 1 leaf
//     ...
//
// Blank lines and '#' comments are ignored.  The JSON mirror carries the same
// fields with terms encoded structurally.  Both round-trip bit-exactly after
// canonicalization.

struct CoalgebraFile {
    Coalgebra coalg;
    std::optional<StateId> point;

    PointedCoalgebra pointed(const std::string& what) const;  // throws when no point
};

CoalgebraFile parse_coalgebra_text(const std::string& src);
std::string write_coalgebra_text(const Coalgebra& c, std::optional<StateId> point);

CoalgebraFile parse_coalgebra_json(const std::string& src);
std::string write_coalgebra_json(const Coalgebra& c, std::optional<StateId> point);

// Sniffs JSON (leading '{') vs text.
CoalgebraFile parse_coalgebra(const std::string& src);

// ── Moore machine files ─────────────────────────────────────────────────────
//
//     inputs: a,b
//     outputs: 0,1
//     states: 3
//     initial: 0
//     0: 1 2 -> 0
//     ...

MooreMachine parse_moore_text(const std::string& src);
std::string write_moore_text(const MooreMachine& m);

// ── DOT export ──────────────────────────────────────────────────────────────

std::string coalgebra_to_dot(const Coalgebra& c, std::optional<StateId> point);
std::string tree_to_dot(const Tree& t);

}  // namespace coalg
